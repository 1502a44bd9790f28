// Acceptance suite: one line per criterion, exit 0 iff all pass.
//
//   1 cocycle law            Theta.b = 0 and Theta.(1-tau) = 0 on the corpus
//   2 trace reduction        length-one chains reproduce the Kapustin-Li trace
//   3 correction identities  defect identity and graded cyclic symmetry
//   4 worked constants       z^3 and z^2 reference values
//   5 one-variable form      closed form vs. the general evaluator
//   6 residue engine         Milnor identity, backend agreement, contour oracle
//   7 nondegeneracy          gram matrices of the z^d object families
//   8 structural identities  b^2, tau/norm compatibilities
//   9 determinism            CLI verify output is byte-identical across thread counts

#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "mfcy/verify.hpp"

namespace {

struct Criterion {
    std::string label;
    std::vector<std::string> checks;   // names from run_verification
};

std::string run_command(const std::string& cmd) {
    std::array<char, 4096> buf{};
    std::string out;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return out;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

    mfcy::VerifyOptions opts;
    opts.corpus = "standard";
    opts.seed = 7;
    opts.threads = 1;

    std::vector<mfcy::CheckResult> results = mfcy::run_verification(opts);
    std::map<std::string, const mfcy::CheckResult*> by_name;
    for (const auto& r : results) by_name[r.name] = &r;

    const std::vector<Criterion> criteria{
        {"1 cocycle law (Theta.b = 0, Theta.(1-tau) = 0)", {"theta_cocycle_law", "theta_cyclicity"}},
        {"2 Kapustin-Li reduction at length one", {"kl_reduction"}},
        {"3 defect identity and graded symmetry", {"corr_defect_identity", "tilde_graded_symmetry"}},
        {"4 worked constants", {"worked_constants"}},
        {"5 one-variable closed form", {"one_variable_closed_form"}},
        {"6 residue engine cross-checks",
         {"residue_milnor_identity", "residue_backend_agreement", "residue_contour_oracle"}},
        {"7 nondegeneracy of the induced pairing", {"nondegeneracy_gram"}},
        {"8 structural chain identities",
         {"structural_b_squared", "structural_tau_compatibility", "structural_norm_compatibility",
          "structural_tau_power"}},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        bool ok = true;
        std::string detail;
        for (const std::string& name : c.checks) {
            auto it = by_name.find(name);
            if (it == by_name.end()) {
                ok = false;
                detail += name + "=missing ";
                continue;
            }
            ok = ok && it->second->pass;
            detail += name + (it->second->pass ? "=pass " : "=FAIL(" + it->second->detail + ") ");
        }
        all_ok = all_ok && ok;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.label << "  " << detail << "\n";
    }

    // criterion 9: byte-identical verify reports across thread counts
    {
        bool ok = false;
        std::string detail = "cli path missing";
        if (!cli_path.empty()) {
            std::string base = cli_path + " verify --corpus standard --seed 7 --format text";
            std::string a = run_command(base + " --threads 1");
            std::string b = run_command(base + " --threads 8");
            ok = !a.empty() && a == b;
            detail = ok ? "reports identical" : "reports differ or empty";
        }
        all_ok = all_ok && ok;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "9 determinism across thread counts  " << detail
                  << "\n";
    }

    return all_ok ? 0 : 1;
}
