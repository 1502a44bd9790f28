#pragma once

#include <cstddef>
#include <vector>

#include "mfcy/linalg.hpp"
#include "mfcy/poly.hpp"

namespace mfcy {

/// Reduced Groebner basis with an explicit representation of every basis
/// element in the original generators.
struct GroebnerBasis {
    std::vector<Poly> generators;                 // monic, auto-reduced, sorted by leading monomial
    std::vector<std::vector<Poly>> cofactors;     // generators[i] == sum_j cofactors[i][j] * input[j]
    MonomialOrder order;
    std::size_t input_count = 0;
    std::size_t nvars = 0;
};

/// Buchberger with the normal selection strategy (smallest pair lcm in the
/// order, ties by input index). Output is canonical for a fixed input order.
GroebnerBasis groebner(const std::vector<Poly>& gens, MonomialOrder order = MonomialOrder::degrevlex());

struct NormalFormResult {
    Poly remainder;                 // no term divisible by a basis leading monomial
    std::vector<Poly> cofactors;    // p == remainder + sum_i cofactors[i] * gb.generators[i]
};

NormalFormResult normal_form(const Poly& p, const GroebnerBasis& gb);

/// Monomials outside the leading-term ideal, sorted by ascending degrevlex.
/// Throws ValidationError when the staircase is infinite (ideal not
/// zero-dimensional).
std::vector<Monomial> quotient_basis(const GroebnerBasis& gb);

/// Coordinates of normal_form(p) in the quotient basis.
std::vector<Rational> quotient_coordinates(const Poly& p, const GroebnerBasis& gb,
                                           const std::vector<Monomial>& basis);

/// Matrix of multiplication by `p` on the quotient algebra; column j holds
/// the coordinates of p * basis[j].
Matrix<Rational> multiplication_matrix(const Poly& p, const GroebnerBasis& gb,
                                       const std::vector<Monomial>& basis);

struct Eliminant {
    Poly chi;                            // monic, univariate in the chosen variable
    std::vector<Poly> input_cofactors;   // chi == sum_j input_cofactors[j] * input[j]
};

/// Least-degree monic chi(z_i) lying in the ideal, found by Krylov iteration
/// on the image of powers of z_i in the quotient algebra. Requires a finite
/// quotient basis.
Eliminant minimal_polynomial(const GroebnerBasis& gb, std::size_t var);

} // namespace mfcy
