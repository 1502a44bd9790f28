#include "mfcy/residue.hpp"

#include <cmath>
#include <complex>

#include "mfcy/error.hpp"
#include "mfcy/linalg.hpp"

namespace mfcy {

void ResidueQuery::validate() const {
    const std::size_t n = numerator.nvars();
    if (denominators.size() != n)
        throw ValidationError("residue query needs exactly one denominator per variable");
    for (const auto& d : denominators) {
        if (d.g.nvars() != n) throw ValidationError("residue denominator in wrong ring");
        if (d.g.is_zero()) throw ValidationError("residue denominator is identically zero");
        if (d.power == 0) throw ValidationError("residue denominator has zero exponent");
    }
    if (point) {
        if (point->size() != n) throw ValidationError("residue point has wrong dimension");
        for (const auto& d : denominators)
            if (!d.g.evaluate(*point).is_zero())
                throw ValidationError("residue point is not a common zero of the denominators");
    }
}

namespace {

// g = z^m * u with u(0) != 0, in one variable. Returns (m, u).
std::pair<unsigned, Poly> split_unit_times_power(const Poly& g) {
    unsigned m = 0;
    for (const auto& [mon, c] : g.terms()) {
        if (m == 0 || mon.exp(0) < m) m = mon.exp(0);
        if (mon.exp(0) == 0) { m = 0; break; }
    }
    Poly u(g.nvars());
    for (const auto& [mon, c] : g.terms())
        u += Poly::term(Monomial::variable(1, 0, mon.exp(0) - m), c);
    return {m, u};
}

// Coefficient of z_i^{d-1} of p reduced by the monic univariate chi(z_i)
// of degree d (total residue over the roots of chi, one variable at a time).
Poly univariate_total_step(Poly p, const Poly& chi, std::size_t var) {
    const unsigned d = chi.degree_in(var);
    if (d == 0) throw ValidationError("eliminant is constant");
    // Reduce p modulo chi as a polynomial in z_var with Poly coefficients.
    while (true) {
        unsigned dp = p.degree_in(var);
        if (dp < d) break;
        Poly lead = p.coefficient_in_variable(var, dp);
        if (lead.is_zero()) break;
        // p -= lead * z^{dp-d} * chi
        Poly sub = lead * chi.times_monomial(Monomial::variable(chi.nvars(), var, dp - d), Rational(1));
        p -= sub;
    }
    return p.coefficient_in_variable(var, d - 1);
}

// Local variant: coefficient of z_i^{m-1} of p * v^{-1} where chi = z_i^m * v,
// v(0) != 0 (local residue of p / chi at z_i = 0).
Poly univariate_local_step(const Poly& p, const Poly& chi, std::size_t var) {
    // Split chi = z^m v in the variable `var`; chi is univariate in var.
    unsigned m = chi.degree_in(var) + 1;
    for (const auto& [mon, c] : chi.terms()) m = std::min(m, mon.exp(var));
    if (m == 0) return Poly(p.nvars());   // chi(0) != 0: no pole at the point
    Poly v(chi.nvars());
    for (const auto& [mon, c] : chi.terms())
        v += Poly::term(Monomial::variable(chi.nvars(), var, mon.exp(var) - m), c);
    Poly vinv = truncated_inverse(v, m - 1);
    Poly prod = p * vinv;
    return prod.coefficient_in_variable(var, m - 1);
}

struct EliminantSystem {
    std::vector<Poly> chis;       // chis[i] univariate in variable i
    Poly det_a{0};                // determinant of the cofactor matrix
    bool empty_locus = false;     // unit ideal: nothing to sum over
};

EliminantSystem eliminant_system(const std::vector<DenominatorPower>& dens) {
    const std::size_t n = dens.size();
    std::vector<Poly> powered;
    powered.reserve(n);
    for (const auto& d : dens) powered.push_back(d.g.pow(d.power));
    GroebnerBasis gb = groebner(powered);
    EliminantSystem sys;
    if (quotient_basis(gb).empty()) {   // throws when not zero-dimensional
        sys.empty_locus = true;
        return sys;
    }
    Matrix<Poly> a(n, n, Poly(n));
    for (std::size_t i = 0; i < n; ++i) {
        Eliminant e = minimal_polynomial(gb, i);
        sys.chis.push_back(e.chi);
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = e.input_cofactors[j];
    }
    sys.det_a = poly_det_bareiss(a);
    return sys;
}

std::vector<Rational> origin(std::size_t n) { return std::vector<Rational>(n, Rational(0)); }

} // namespace

CriticalLocus critical_locus(const Poly& f) {
    const std::size_t n = f.nvars();
    CriticalLocus cl;
    for (std::size_t i = 0; i < n; ++i) cl.jacobian.push_back(f.partial_derivative(i));
    for (const Poly& g : cl.jacobian)
        if (g.is_zero())
            throw ValidationError("critical locus is not isolated: a partial derivative vanishes identically");
    cl.gb = groebner(cl.jacobian);
    cl.milnor_basis = quotient_basis(cl.gb);
    cl.milnor_number = cl.milnor_basis.size();
    return cl;
}

Rational residue_univariate(const Poly& h, const Poly& g, unsigned s, const Rational& x) {
    if (h.nvars() != 1 || g.nvars() != 1) throw ValidationError("residue_univariate expects one variable");
    if (g.is_zero()) throw ValidationError("residue_univariate: zero denominator");
    if (s == 0) return Rational(0);
    std::vector<Rational> pt{x};
    if (!g.evaluate(pt).is_zero())
        throw ValidationError("residue_univariate: denominator does not vanish at the point");
    Poly hs = h.translate(pt);
    Poly gs = g.translate(pt);
    auto [m, u] = split_unit_times_power(gs);
    // h / g^s = h * u^{-s} / z^{m s}; want the coefficient of z^{m s - 1}.
    const unsigned target = m * s - 1;
    Poly uinv = truncated_inverse(u.pow(s), target);
    Poly prod = hs * uinv;
    return prod.coefficient_of(Monomial::variable(1, 0, target));
}

Rational residue_monomial(const ResidueQuery& q) {
    q.validate();
    const std::size_t n = q.nvars();
    std::vector<Rational> pt = q.point ? *q.point : origin(n);
    Poly h = q.numerator.translate(pt);

    std::vector<unsigned> pole(n, 0);
    Poly units = Poly::constant(n, 1);
    unsigned inv_bound = 0;
    std::vector<Poly> unit_factors;
    for (std::size_t i = 0; i < n; ++i) {
        Poly g = q.denominators[i].g.translate(pt);
        unsigned c = g.terms().begin()->first.exp(i);
        for (const auto& [mon, coef] : g.terms()) c = std::min(c, mon.exp(i));
        // g must be z_i^c * unit: strip z_i^c and demand a nonzero constant term.
        Poly u(n);
        for (const auto& [mon, coef] : g.terms()) {
            std::vector<unsigned> e(n);
            for (std::size_t j = 0; j < n; ++j) e[j] = mon.exp(j);
            e[i] -= c;
            u += Poly::term(Monomial(std::move(e)), coef);
        }
        if (u.constant_term().is_zero())
            throw BackendUnsupported("denominator " + std::to_string(i + 1) +
                                     " is not (unit)*(power of z" + std::to_string(i + 1) + ") at the point");
        unsigned total = c * q.denominators[i].power;
        if (total == 0) return Rational(0);   // no pole in this slot: the residue vanishes
        pole[i] = total;
        unit_factors.push_back(u.pow(q.denominators[i].power));
        inv_bound += total - 1;
    }
    for (const Poly& u : unit_factors) units = (units * truncated_inverse(u, inv_bound)).truncate_total_degree(inv_bound);
    Poly prod = h * units;
    std::vector<unsigned> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = pole[i] - 1;
    return prod.coefficient_of(Monomial(std::move(target)));
}

Rational residue_total(const ResidueQuery& q) {
    q.validate();
    const std::size_t n = q.nvars();
    EliminantSystem sys = eliminant_system(q.denominators);
    if (sys.empty_locus) return Rational(0);
    Poly r = q.numerator * sys.det_a;
    for (std::size_t i = 0; i < n; ++i) r = univariate_total_step(std::move(r), sys.chis[i], i);
    if (r.is_zero()) return Rational(0);
    if (!r.is_constant()) throw ValidationError("residue_total: nonconstant result (internal error)");
    return r.constant_term();
}

Rational residue_local(const ResidueQuery& q) {
    q.validate();
    if (!q.point) throw ValidationError("residue_local requires a point");
    try {
        return residue_monomial(q);
    } catch (const BackendUnsupported&) {
        // fall through to the transformation law with local splitting
    }
    const std::size_t n = q.nvars();
    // Translate the whole query to the origin, then split each eliminant as
    // z_i^{m_i} * (unit) and extract the local factor per variable.
    std::vector<DenominatorPower> dens = q.denominators;
    for (auto& d : dens) d.g = d.g.translate(*q.point);
    EliminantSystem sys = eliminant_system(dens);
    if (sys.empty_locus) return Rational(0);
    Poly r = q.numerator.translate(*q.point) * sys.det_a;
    for (std::size_t i = 0; i < n; ++i) r = univariate_local_step(r, sys.chis[i], i);
    if (r.is_zero()) return Rational(0);
    if (!r.is_constant()) throw ValidationError("residue_local: nonconstant result (internal error)");
    return r.constant_term();
}

double contour_oracle_1d(const Poly& h, const Poly& g, unsigned s, double x, double radius,
                         int samples) {
    if (h.nvars() != 1 || g.nvars() != 1) throw ValidationError("contour_oracle_1d expects one variable");
    if (samples <= 0) throw ValidationError("contour_oracle_1d: sample count must be positive");
    const double two_pi = 6.283185307179586476925286766559;
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < samples; ++k) {
        double t = two_pi * k / samples;
        std::complex<double> dz(radius * std::cos(t), radius * std::sin(t));
        std::complex<double> z = std::complex<double>(x, 0.0) + dz;
        std::complex<double> gz = g.evaluate(std::vector<std::complex<double>>{z});
        std::complex<double> den(1.0, 0.0);
        for (unsigned e = 0; e < s; ++e) den *= gz;
        acc += h.evaluate(std::vector<std::complex<double>>{z}) / den * dz;
    }
    // (1/2 pi i) * contour integral; the rule above already carries dz = i z dt.
    return (acc / static_cast<double>(samples)).real();
}

} // namespace mfcy
