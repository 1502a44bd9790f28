#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfcy/error.hpp"
#include "mfcy/problem.hpp"
#include "mfcy/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw mfcy::ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<mfcy::Rational> parse_point_arg(const std::string& text) {
    std::vector<mfcy::Rational> pt;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) pt.push_back(mfcy::Rational::from_string(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return pt;
}

int guarded(const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const mfcy::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const mfcy::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const mfcy::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact matrix-factorization traces and residues"};
    app.require_subcommand(1);

    std::string file = "-";
    std::string format = "json";
    std::string mode = "total";
    std::string point_arg;
    std::string chain_name, morphism_name, op_name;
    std::string corpus = "standard";
    std::uint64_t budget = 10'000'000;
    unsigned threads = 1;
    std::uint64_t seed = 7;
    bool timings = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--budget", budget, "maximum term count for the chain functional");
        sub->add_option("--threads", threads, "worker threads for term evaluation");
        sub->add_option("--format", format, "output format: json or text");
        sub->add_flag("--timings", timings, "include elapsed_ms diagnostics (non-deterministic)");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "execute the task list of a problem file");
    run_cmd->add_option("file", file, "problem JSON file ('-' for stdin)");
    add_common(run_cmd);

    CLI::App* residue_cmd = app.add_subcommand("residue", "evaluate one residue query");
    residue_cmd->add_option("file", file, "query JSON file ('-' for stdin)");
    add_common(residue_cmd);

    CLI::App* theta_cmd = app.add_subcommand("theta", "evaluate the chain functional");
    theta_cmd->add_option("--file", file, "problem JSON file")->required();
    theta_cmd->add_option("--chain", chain_name, "chain name")->required();
    theta_cmd->add_option("--mode", mode, "total or point");
    theta_cmd->add_option("--point", point_arg, "comma-separated rational coordinates");
    add_common(theta_cmd);

    CLI::App* mf_cmd = app.add_subcommand("mf", "matrix factorization utilities");
    CLI::App* mf_check = mf_cmd->add_subcommand("check", "validate factorizations and delta^2 = 0");
    mf_check->add_option("--file", file, "problem JSON file")->required();
    add_common(mf_check);

    CLI::App* chain_cmd = app.add_subcommand("chain", "Hochschild chain utilities");
    CLI::App* chain_apply = chain_cmd->add_subcommand("apply", "apply a chain operator");
    chain_apply->add_option("--file", file, "problem JSON file")->required();
    chain_apply->add_option("--chain", chain_name, "chain name")->required();
    chain_apply->add_option("--op", op_name, "b | bdelta | bmu | tau | N")->required();
    add_common(chain_apply);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    verify_cmd->add_option("--corpus", corpus, "corpus name: standard or smoke");
    verify_cmd->add_option("--seed", seed, "random seed");
    add_common(verify_cmd);

    CLI11_PARSE(app, argc, argv);

    mfcy::RunOptions ropts;
    ropts.budget = budget;
    ropts.threads = threads;
    ropts.seed = seed;
    ropts.timings = timings;
    mfcy::EmitFormat efmt = format == "text" ? mfcy::EmitFormat::text : mfcy::EmitFormat::json;

    if (run_cmd->parsed()) {
        return guarded([&] {
            mfcy::ProblemFile pf = mfcy::ProblemFile::parse(slurp(file));
            std::cout << mfcy::emit(mfcy::run(pf, ropts), efmt);
        });
    }

    if (residue_cmd->parsed()) {
        // standalone schema: {vars, numerator, denominators: [{poly, power}], point?}
        std::string error_text;
        int code = kExitOk;
        try {
            nlohmann::ordered_json q = nlohmann::ordered_json::parse(slurp(file), nullptr, false);
            if (q.is_discarded()) throw mfcy::ParseError("malformed JSON input");
            nlohmann::ordered_json wrapped;
            wrapped["vars"] = q.at("vars");
            wrapped["superpotential"] = "0";   // unused by the residue task
            nlohmann::ordered_json task;
            task["command"] = "residue";
            task["numerator"] = q.at("numerator");
            task["denominators"] = q.at("denominators");
            if (q.contains("point")) task["point"] = q["point"];
            wrapped["tasks"] = nlohmann::ordered_json::array({task});
            mfcy::ProblemFile pf = mfcy::ProblemFile::parse(wrapped.dump());
            auto records = mfcy::run(pf, ropts);
            nlohmann::ordered_json out;
            out["value"] = nlohmann::ordered_json::parse(records.at(0).value_json);
            std::cout << out.dump(2) << "\n";
        } catch (const mfcy::BudgetError& e) {
            error_text = e.what();
            code = kExitBudget;
        } catch (const mfcy::ParseError& e) {
            error_text = e.what();
            code = kExitParse;
        } catch (const std::exception& e) {
            error_text = e.what();
            code = kExitValidation;
        }
        if (code != kExitOk) {
            nlohmann::ordered_json out;
            out["error"] = error_text;
            std::cout << out.dump(2) << "\n";
        }
        return code;
    }

    if (theta_cmd->parsed()) {
        return guarded([&] {
            mfcy::ProblemFile pf = mfcy::ProblemFile::parse(slurp(file));
            nlohmann::ordered_json task;
            task["command"] = "theta";
            task["chain"] = chain_name;
            task["mode"] = mode;
            if (mode == "point") task["point"] = nlohmann::ordered_json::array();
            if (!point_arg.empty()) {
                nlohmann::ordered_json pt = nlohmann::ordered_json::array();
                for (const auto& c : parse_point_arg(point_arg)) pt.push_back(c.to_string());
                task["point"] = std::move(pt);
            }
            pf.tasks_json = nlohmann::ordered_json::array({task}).dump();
            std::cout << mfcy::emit(mfcy::run(pf, ropts), efmt);
        });
    }

    if (mf_check->parsed()) {
        return guarded([&] {
            mfcy::ProblemFile pf = mfcy::ProblemFile::parse(slurp(file));
            nlohmann::ordered_json task;
            task["command"] = "mf_check";
            pf.tasks_json = nlohmann::ordered_json::array({task}).dump();
            std::cout << mfcy::emit(mfcy::run(pf, ropts), efmt);
        });
    }

    if (chain_apply->parsed()) {
        return guarded([&] {
            mfcy::ProblemFile pf = mfcy::ProblemFile::parse(slurp(file));
            nlohmann::ordered_json task;
            task["command"] = "chain_apply";
            task["chain"] = chain_name;
            task["op"] = op_name;
            pf.tasks_json = nlohmann::ordered_json::array({task}).dump();
            std::cout << mfcy::emit(mfcy::run(pf, ropts), efmt);
        });
    }

    if (verify_cmd->parsed()) {
        mfcy::VerifyOptions vopts;
        vopts.corpus = corpus;
        vopts.seed = seed;
        vopts.threads = threads;
        vopts.budget = budget;
        std::vector<mfcy::CheckResult> results;
        int code = guarded([&] { results = mfcy::run_verification(vopts); });
        if (code != kExitOk) return code;
        if (efmt == mfcy::EmitFormat::json) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& r : results) {
                nlohmann::ordered_json o;
                o["check"] = r.name;
                o["pass"] = r.pass;
                o["detail"] = r.detail;
                arr.push_back(std::move(o));
            }
            std::cout << arr.dump(2) << "\n";
        } else {
            for (const auto& r : results)
                std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (" << r.detail << ")\n";
        }
        return mfcy::all_passed(results) ? kExitOk : kExitValidation;
    }

    return kExitOk;
}
