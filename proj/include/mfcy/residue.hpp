#pragma once

#include <optional>
#include <vector>

#include "mfcy/groebner.hpp"
#include "mfcy/poly.hpp"

namespace mfcy {

/// One denominator factor g^power of a residue integrand.
struct DenominatorPower {
    Poly g;
    unsigned power = 1;
};

/// Arguments of a Grothendieck residue
///   Res[ numerator * dz_1 ^ ... ^ dz_n / (g_1^{s_1} ... g_n^{s_n}) ].
/// Slot i of `denominators` is paired with variable i. With a point the
/// query asks for the local residue there; without one, for the sum over
/// the whole common zero locus.
struct ResidueQuery {
    Poly numerator{0};
    std::vector<DenominatorPower> denominators;
    std::optional<std::vector<Rational>> point;

    std::size_t nvars() const { return numerator.nvars(); }
    void validate() const;
};

/// Jacobian ideal data of a superpotential: generators, Groebner basis,
/// monomial basis of the Milnor algebra, Milnor number.
struct CriticalLocus {
    std::vector<Poly> jacobian;
    GroebnerBasis gb;
    std::vector<Monomial> milnor_basis;
    std::size_t milnor_number = 0;
};

/// Throws ValidationError when the critical locus is not isolated.
CriticalLocus critical_locus(const Poly& f);

/// Coefficient of (z-x)^{-1} in the Laurent expansion of h/g^s at x.
/// Requires one variable and g(x) == 0.
Rational residue_univariate(const Poly& h, const Poly& g, unsigned s, const Rational& x);

/// Local residue for denominators of the shape (unit) * z_i^{c_i} at the
/// query point (origin when absent). Throws BackendUnsupported when a
/// denominator does not have that shape.
Rational residue_monomial(const ResidueQuery& q);

/// Sum of the local residues over all common zeros, computed through the
/// transformation law: monic eliminants chi_i(z_i) = sum_j A_ij g_j^{s_j}
/// reduce the query to iterated univariate coefficient extraction against
/// h * det(A).
Rational residue_total(const ResidueQuery& q);

/// Local residue at the rational query point, via the monomial backend when
/// it applies and otherwise through eliminant splitting at the point.
Rational residue_local(const ResidueQuery& q);

/// Numeric contour integral (1/2·pi·i) of h/g^s over |z-x| = radius in one
/// variable, by the N-point periodic trapezoid rule. The caller must ensure
/// no other zero of g lies within the contour. Test oracle only.
double contour_oracle_1d(const Poly& h, const Poly& g, unsigned s, double x, double radius,
                         int samples);

} // namespace mfcy
