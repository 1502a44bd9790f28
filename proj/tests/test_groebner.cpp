#include <doctest.h>

#include "mfcy/error.hpp"
#include "mfcy/groebner.hpp"
#include "mfcy/verify.hpp"

using namespace mfcy;

namespace {
Poly P(const std::string& s, std::size_t n) { return Poly::parse(s, default_variable_names(n)); }

Poly expand(const NormalFormResult& nf, const GroebnerBasis& gb) {
    Poly acc = nf.remainder;
    for (std::size_t i = 0; i < gb.generators.size(); ++i) acc += nf.cofactors[i] * gb.generators[i];
    return acc;
}

Poly expand_rep(const GroebnerBasis& gb, std::size_t i, const std::vector<Poly>& input) {
    Poly acc(gb.nvars);
    for (std::size_t j = 0; j < input.size(); ++j) acc += gb.cofactors[i][j] * input[j];
    return acc;
}
} // namespace

TEST_CASE("groebner on trivial inputs") {
    std::vector<Poly> gens{P("z1", 2), P("z2", 2)};
    GroebnerBasis gb = groebner(gens);
    REQUIRE(gb.generators.size() == 2);
    CHECK(gb.generators[0] == P("z1", 2));
    CHECK(gb.generators[1] == P("z2", 2));
    for (std::size_t i = 0; i < 2; ++i) CHECK(expand_rep(gb, i, gens) == gb.generators[i]);

    GroebnerBasis single = groebner({P("z1^2", 1)});
    REQUIRE(single.generators.size() == 1);
    CHECK(single.generators[0] == P("z1^2", 1));
}

TEST_CASE("groebner with reduction relations") {
    // z1^2 = z2, z2^2 = z1 modulo the ideal, so z1^4 reduces to z1
    std::vector<Poly> gens{P("z1^2 - z2", 2), P("z2^2 - z1", 2)};
    GroebnerBasis gb = groebner(gens);
    NormalFormResult nf = normal_form(P("z1^4", 2), gb);
    CHECK(nf.remainder == P("z1", 2));
    CHECK(expand(nf, gb) == P("z1^4", 2));
}

TEST_CASE("normal form examples and representation identity") {
    GroebnerBasis gb = groebner({P("z1", 1)});
    NormalFormResult nf = normal_form(P("z1", 1), gb);
    CHECK(nf.remainder.is_zero());
    CHECK(nf.cofactors[0] == P("1", 1));
    nf = normal_form(P("z1 + 1", 1), gb);
    CHECK(nf.remainder == P("1", 1));
    CHECK(nf.cofactors[0] == P("1", 1));

    GroebnerBasis gb2 = groebner({P("z1^2 - z2", 2), P("z2^2 - z1", 2)});
    NormalFormResult nf2 = normal_form(P("z1^2*z2", 2), gb2);
    CHECK(nf2.remainder == P("z1", 2));
    CHECK(expand(nf2, gb2) == P("z1^2*z2", 2));
}

TEST_CASE("representation identity on random ideals") {
    DeterministicRng rng(21);
    for (int t = 0; t < 15; ++t) {
        std::size_t n = 1 + rng.below(2);
        std::vector<Poly> gens;
        for (int g = 0; g < 2; ++g) {
            Poly p = random_poly(rng, n, 2);
            if (p.is_zero()) p = Poly::variable(n, 0);
            gens.push_back(p);
        }
        GroebnerBasis gb = groebner(gens);
        for (std::size_t i = 0; i < gb.generators.size(); ++i)
            CHECK(expand_rep(gb, i, gens) == gb.generators[i]);
        Poly probe = random_poly(rng, n, 3);
        NormalFormResult nf = normal_form(probe, gb);
        CHECK(expand(nf, gb) == probe);
    }
}

TEST_CASE("ideal membership via normal form") {
    std::vector<Poly> gens{P("z1^2 - z2", 2), P("z2^2 - z1", 2)};
    GroebnerBasis gb = groebner(gens);
    // z1^4 - z1 is in the ideal
    CHECK(normal_form(P("z1^4 - z1", 2), gb).remainder.is_zero());
    // z1 is not
    CHECK(!normal_form(P("z1", 2), gb).remainder.is_zero());
    // products of generators are in the ideal
    CHECK(normal_form(gens[0] * gens[1], gb).remainder.is_zero());
}

TEST_CASE("quotient basis") {
    CHECK(quotient_basis(groebner({P("z1", 2), P("z2", 2)})) ==
          std::vector<Monomial>{Monomial{{0, 0}}});
    auto qb1 = quotient_basis(groebner({P("z1^2", 1)}));
    CHECK(qb1 == std::vector<Monomial>{Monomial{std::vector<unsigned>{0}},
                                       Monomial{std::vector<unsigned>{1}}});
    // Milnor algebra of z1^3 + z2^3
    auto qb = quotient_basis(groebner({P("3*z1^2", 2), P("3*z2^2", 2)}));
    REQUIRE(qb.size() == 4);
    CHECK(qb[0] == Monomial{{0, 0}});
    CHECK(qb[3] == Monomial{{1, 1}});
    // non-zero-dimensional ideal
    CHECK_THROWS_AS(quotient_basis(groebner({P("z1", 2)})), ValidationError);
}

TEST_CASE("minimal polynomial") {
    {
        GroebnerBasis gb = groebner({P("z1^2", 1)});
        Eliminant e = minimal_polynomial(gb, 0);
        CHECK(e.chi == P("z1^2", 1));
    }
    {
        GroebnerBasis gb = groebner({P("z1 - 1", 1)});
        Eliminant e = minimal_polynomial(gb, 0);
        CHECK(e.chi == P("z1 - 1", 1));
    }
    {
        std::vector<Poly> gens{P("3*z1^2", 2), P("3*z2^2", 2)};
        GroebnerBasis gb = groebner(gens);
        Eliminant e = minimal_polynomial(gb, 0);
        CHECK(e.chi == P("z1^2", 2));
        // membership certificate: chi == sum cofactor_j * input_j
        Poly acc(2);
        for (std::size_t j = 0; j < gens.size(); ++j) acc += e.input_cofactors[j] * gens[j];
        CHECK(acc == e.chi);
    }
}

TEST_CASE("minimal polynomial annihilates the multiplication matrix") {
    DeterministicRng rng(23);
    for (int t = 0; t < 8; ++t) {
        std::size_t n = 1 + rng.below(2);
        std::vector<Poly> gens;
        for (std::size_t v = 0; v < n; ++v) {
            unsigned e = 2 + static_cast<unsigned>(rng.below(2));
            gens.push_back(Poly::variable(n, v).pow(e) +
                           random_poly(rng, n, 1));   // near-monomial, zero-dimensional
        }
        GroebnerBasis gb = groebner(gens);
        std::vector<Monomial> basis;
        try {
            basis = quotient_basis(gb);
        } catch (const ValidationError&) {
            continue;   // perturbation spoiled zero-dimensionality; skip
        }
        for (std::size_t v = 0; v < n; ++v) {
            Eliminant e = minimal_polynomial(gb, v);
            Matrix<Rational> m = multiplication_matrix(Poly::variable(n, v), gb, basis);
            // evaluate chi at the matrix
            const std::size_t mu = basis.size();
            Matrix<Rational> acc(mu, mu, Rational(0));
            Matrix<Rational> power(mu, mu, Rational(0));
            for (std::size_t i = 0; i < mu; ++i) power.at(i, i) = Rational(1);
            unsigned deg = e.chi.degree_in(v);
            for (unsigned d = 0; d <= deg; ++d) {
                Rational c = e.chi.coefficient_of(Monomial::variable(n, v, d));
                for (std::size_t i = 0; i < mu; ++i)
                    for (std::size_t jj = 0; jj < mu; ++jj) acc.at(i, jj) += c * power.at(i, jj);
                // power <- power * m
                Matrix<Rational> next(mu, mu, Rational(0));
                for (std::size_t i = 0; i < mu; ++i)
                    for (std::size_t k = 0; k < mu; ++k)
                        for (std::size_t jj = 0; jj < mu; ++jj)
                            next.at(i, jj) += power.at(i, k) * m.at(k, jj);
                power = next;
            }
            bool zero = true;
            for (std::size_t i = 0; i < mu; ++i)
                for (std::size_t jj = 0; jj < mu; ++jj)
                    if (!acc.at(i, jj).is_zero()) zero = false;
            CHECK(zero);
        }
    }
}

TEST_CASE("bareiss determinant") {
    Matrix<Poly> m(2, 2, Poly(2));
    m.at(0, 0) = P("z1", 2);
    m.at(0, 1) = P("z2", 2);
    m.at(1, 0) = P("z2", 2);
    m.at(1, 1) = P("z1", 2);
    CHECK(poly_det_bareiss(m) == P("z1^2 - z2^2", 2));
    Matrix<Poly> s(2, 2, Poly(1));
    s.at(0, 0) = P("z1", 1);
    s.at(0, 1) = P("z1", 1);
    s.at(1, 0) = P("z1", 1);
    s.at(1, 1) = P("z1", 1);
    CHECK(poly_det_bareiss(s).is_zero());
}
