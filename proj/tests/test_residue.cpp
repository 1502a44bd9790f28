#include <doctest.h>

#include <cmath>

#include "mfcy/error.hpp"
#include "mfcy/residue.hpp"
#include "mfcy/verify.hpp"

using namespace mfcy;

namespace {
Poly P(const std::string& s, std::size_t n) { return Poly::parse(s, default_variable_names(n)); }

ResidueQuery make_query(const Poly& h, std::vector<DenominatorPower> dens) {
    ResidueQuery q;
    q.numerator = h;
    q.denominators = std::move(dens);
    return q;
}
} // namespace

TEST_CASE("univariate residues") {
    // Res_0[z^2 / z^3] = 1
    CHECK(residue_univariate(P("z1^2", 1), P("z1", 1), 3, Rational(0)) == Rational(1));
    CHECK(residue_univariate(P("1", 1), P("z1", 1), 1, Rational(0)) == Rational(1));
    // Res_0[3z / 3z^2] = 1
    CHECK(residue_univariate(P("3*z1", 1), P("3*z1^2", 1), 1, Rational(0)) == Rational(1));
    // no simple pole
    CHECK(residue_univariate(P("1", 1), P("z1", 1), 2, Rational(0)) == Rational(0));
    // shifted point
    CHECK(residue_univariate(P("1", 1), P("z1 - 1", 1), 1, Rational(1)) == Rational(1));
    CHECK_THROWS_AS(residue_univariate(P("1", 1), P("z1 - 1", 1), 1, Rational(0)), ValidationError);
}

TEST_CASE("monomial backend") {
    CHECK(residue_monomial(make_query(P("z1*z2^2", 2), {{P("z1", 2), 2}, {P("z2", 2), 3}})) == Rational(1));
    CHECK(residue_monomial(make_query(P("1", 2), {{P("z1", 2), 1}, {P("z2", 2), 1}})) == Rational(1));
    // Hessian of z1^3+z2^3 over its Jacobian ideal: the Milnor number 4
    CHECK(residue_monomial(make_query(P("36*z1*z2", 2), {{P("3*z1^2", 2), 1}, {P("3*z2^2", 2), 1}})) ==
          Rational(4));
    CHECK_THROWS_AS(residue_monomial(make_query(P("1", 2), {{P("z1 + z2^2", 2), 1}, {P("z2", 2), 1}})),
                    BackendUnsupported);
}

TEST_CASE("total residue via the transformation law") {
    // linear denominators: 1/det of the coefficient matrix
    CHECK(residue_total(make_query(P("1", 2), {{P("z1 + z2", 2), 1}, {P("z1 - z2", 2), 1}})) ==
          Rational(-1, 2));
    // one variable, two simple poles at +-1
    CHECK(residue_total(make_query(P("1", 1), {{P("z1^2 - 1", 1), 1}})) == Rational(0));
    CHECK(residue_total(make_query(P("z1", 1), {{P("z1^2 - 1", 1), 1}})) == Rational(1));
}

TEST_CASE("local residues") {
    {
        ResidueQuery q = make_query(P("1", 1), {{P("2*z1", 1), 1}});
        q.point = std::vector<Rational>{Rational(0)};
        CHECK(residue_local(q) == Rational(1, 2));
    }
    {
        // critical points of z^3 - z are irrational; the local query must reject
        ResidueQuery q = make_query(P("1", 1), {{P("3*z1^2 - 1", 1), 1}});
        q.point = std::vector<Rational>{Rational(0)};
        CHECK_THROWS_AS(residue_local(q), ValidationError);   // not a zero of the denominator
        // but the total residue is fine
        CHECK(residue_total(make_query(P("1", 1), {{P("3*z1^2 - 1", 1), 1}})) == Rational(0));
    }
    {
        ResidueQuery q = make_query(P("1", 2), {{P("2*z1", 2), 1}, {P("2*z2", 2), 1}});
        q.point = std::vector<Rational>{Rational(0), Rational(0)};
        CHECK(residue_local(q) == Rational(1, 4));
    }
    {
        // two rational critical points; local residues must add up to the total
        Poly g = P("z1^2 - z1", 1);    // zeros at 0 and 1
        Rational total = residue_total(make_query(P("z1 + 1", 1), {{g, 1}}));
        ResidueQuery q0 = make_query(P("z1 + 1", 1), {{g, 1}});
        q0.point = std::vector<Rational>{Rational(0)};
        ResidueQuery q1 = make_query(P("z1 + 1", 1), {{g, 1}});
        q1.point = std::vector<Rational>{Rational(1)};
        CHECK(residue_local(q0) + residue_local(q1) == total);
        CHECK(residue_local(q0) == Rational(-1));
        CHECK(residue_local(q1) == Rational(2));
    }
}

TEST_CASE("local residues through eliminant splitting") {
    // the monomial backend rejects these denominators, forcing the fallback
    ResidueQuery q = make_query(P("1", 2), {{P("z1 + z2", 2), 1}, {P("z1 - z2", 2), 1}});
    q.point = std::vector<Rational>{Rational(0), Rational(0)};
    CHECK(residue_local(q) == Rational(-1, 2));
    // after u = z1+z2, v = z1-z2 with Jacobian -1/2:
    // Res[(u+v)/2 * (-1/2) / (u v^2)] = coefficient of v, i.e. -1/4
    ResidueQuery q2 = make_query(P("z1", 2), {{P("z1 + z2", 2), 1}, {P("z1 - z2", 2), 2}});
    q2.point = std::vector<Rational>{Rational(0), Rational(0)};
    CHECK(residue_local(q2) == Rational(-1, 4));
}

TEST_CASE("residue linearity in the numerator") {
    DeterministicRng rng(31);
    for (int t = 0; t < 10; ++t) {
        std::size_t n = 1 + rng.below(2);
        std::vector<DenominatorPower> dens;
        for (std::size_t v = 0; v < n; ++v)
            dens.push_back({Poly::variable(n, v).pow(1 + rng.below(2)).scaled(Rational(rng.below(2) ? 2 : 1)), 1});
        Poly h1 = random_poly(rng, n, 3), h2 = random_poly(rng, n, 3);
        Rational c(rng.int_between(-3, 3));
        Rational lhs = residue_total(make_query(h1.scaled(c) + h2, dens));
        Rational rhs = c * residue_total(make_query(h1, dens)) + residue_total(make_query(h2, dens));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("numerator divisible by a denominator factor drops the pole") {
    // Res[ h*g1 / (g1^2 g2) ] == Res[ h / (g1 g2) ]
    Poly g1 = P("z1", 2), g2 = P("z2", 2), h = P("1 + z1*z2", 2);
    Rational a = residue_total(make_query(h * g1, {{g1, 2}, {g2, 1}}));
    Rational b = residue_total(make_query(h, {{g1, 1}, {g2, 1}}));
    CHECK(a == b);
    // and an actual vanishing instance: numerator in the full denominator ideal
    Rational c = residue_total(make_query(g1 * g2, {{g1, 1}, {g2, 1}}));
    CHECK(c == Rational(0));
}

TEST_CASE("milnor number identity for small Brieskorn-Pham data") {
    // f = z1^3 + z2^4: mu = 6, Hessian determinant residue equals mu
    Poly f = P("z1^3 + z2^4", 2);
    CriticalLocus cl = critical_locus(f);
    CHECK(cl.milnor_number == 6);
    Poly hess = P("3*2*z1", 2) * P("4*3*z2^2", 2);
    Rational res = residue_total(make_query(hess, {{f.partial_derivative(0), 1}, {f.partial_derivative(1), 1}}));
    CHECK(res == Rational(6));
}

TEST_CASE("contour oracle") {
    CHECK(std::abs(contour_oracle_1d(P("1", 1), P("z1", 1), 1, 0.0, 1.0, 512) - 1.0) < 1e-10);
    CHECK(std::abs(contour_oracle_1d(P("3*z1", 1), P("3*z1^2", 1), 1, 0.0, 1.0, 512) - 1.0) < 1e-8);
    CHECK(std::abs(contour_oracle_1d(P("1", 1), P("z1", 1), 2, 0.0, 1.0, 512)) < 1e-10);
}

TEST_CASE("critical locus rejects non-isolated input") {
    CHECK_THROWS_AS(critical_locus(P("z1*z2", 2) * P("z1", 2)), ValidationError);
}
