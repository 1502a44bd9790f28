#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfcy/problem.hpp"
#include "mfcy/residue.hpp"
#include "mfcy/verify.hpp"

namespace py = pybind11;
using namespace mfcy;

namespace {

std::string py_normalize_poly(const std::string& text, const std::vector<std::string>& vars) {
    return Poly::parse(text, vars).to_string(vars);
}

std::vector<std::string> py_groebner(const std::vector<std::string>& gens,
                                     const std::vector<std::string>& vars) {
    std::vector<Poly> ps;
    for (const auto& g : gens) ps.push_back(Poly::parse(g, vars));
    GroebnerBasis gb = groebner(ps);
    std::vector<std::string> out;
    for (const Poly& p : gb.generators) out.push_back(p.to_string(vars));
    return out;
}

std::vector<std::string> py_quotient_basis(const std::vector<std::string>& gens,
                                           const std::vector<std::string>& vars) {
    std::vector<Poly> ps;
    for (const auto& g : gens) ps.push_back(Poly::parse(g, vars));
    auto basis = quotient_basis(groebner(ps));
    std::vector<std::string> out;
    for (const Monomial& m : basis) out.push_back(Poly::term(m, Rational(1)).to_string(vars));
    return out;
}

std::size_t py_milnor_number(const std::string& f, const std::vector<std::string>& vars) {
    return critical_locus(Poly::parse(f, vars)).milnor_number;
}

std::string py_residue(const std::string& numerator,
                       const std::vector<std::pair<std::string, unsigned>>& denominators,
                       const std::vector<std::string>& vars,
                       const std::optional<std::vector<std::string>>& point) {
    ResidueQuery q;
    q.numerator = Poly::parse(numerator, vars);
    for (const auto& [g, s] : denominators) q.denominators.push_back({Poly::parse(g, vars), s});
    if (point) {
        std::vector<Rational> pt;
        for (const auto& c : *point) pt.push_back(Rational::from_string(c));
        q.point = std::move(pt);
        return residue_local(q).to_string();
    }
    return residue_total(q).to_string();
}

std::string py_run_problem(const std::string& json_text, std::uint64_t budget, unsigned threads) {
    ProblemFile pf = ProblemFile::parse(json_text);
    RunOptions opts;
    opts.budget = budget;
    opts.threads = threads;
    return emit(run(pf, opts), EmitFormat::json);
}

bool py_verify(const std::string& corpus, std::uint64_t seed, unsigned threads) {
    VerifyOptions opts;
    opts.corpus = corpus;
    opts.seed = seed;
    opts.threads = threads;
    return all_passed(run_verification(opts));
}

} // namespace

PYBIND11_MODULE(_mfcy, m) {
    m.doc() = "exact matrix-factorization traces and Grothendieck residues";

    m.def("normalize_poly", &py_normalize_poly, py::arg("text"), py::arg("vars"),
          "parse a polynomial and return its canonical string form");
    m.def("groebner", &py_groebner, py::arg("generators"), py::arg("vars"),
          "reduced Groebner basis (degrevlex) as canonical strings");
    m.def("quotient_basis", &py_quotient_basis, py::arg("generators"), py::arg("vars"),
          "monomial basis of the quotient by a zero-dimensional ideal");
    m.def("milnor_number", &py_milnor_number, py::arg("superpotential"), py::arg("vars"));
    m.def("residue", &py_residue, py::arg("numerator"), py::arg("denominators"), py::arg("vars"),
          py::arg("point") = std::nullopt,
          "total residue, or the local one when a rational point is given");
    m.def("run_problem", &py_run_problem, py::arg("json_text"),
          py::arg("budget") = std::uint64_t{10'000'000}, py::arg("threads") = 1u,
          "execute a problem file and return the result records as JSON");
    m.def("verify", &py_verify, py::arg("corpus") = "smoke", py::arg("seed") = std::uint64_t{7},
          py::arg("threads") = 1u, "run the invariant suite; true iff everything passes");

    py::register_exception<ParseError>(m, "MfcyParseError");
    py::register_exception<ValidationError>(m, "MfcyValidationError");
    py::register_exception<BudgetError>(m, "MfcyBudgetError");
}
