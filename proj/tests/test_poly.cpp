#include <doctest.h>

#include "mfcy/error.hpp"
#include "mfcy/poly.hpp"
#include "mfcy/verify.hpp"

using namespace mfcy;

namespace {
Poly P(const std::string& s, std::size_t n) { return Poly::parse(s, default_variable_names(n)); }
} // namespace

TEST_CASE("rational basics") {
    CHECK(Rational(3, 6) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational::from_string("7/21") == Rational(1, 3));
    CHECK(Rational::from_string("-4") == Rational(-4));
    CHECK(Rational::from_string("+3") == Rational(3));
    CHECK(Rational::from_string("2/-4") == Rational(-1, 2));
    CHECK(Rational(1, 2).to_string() == "1/2");
    CHECK(Rational(-1, 2).to_string() == "-1/2");
    CHECK(Rational(5).to_string() == "5");
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational::factorial(5) == Rational(120));
    CHECK_THROWS_AS(Rational::from_string("1.5"), ParseError);
    CHECK_THROWS_AS(Rational(1, 0), ValidationError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ValidationError);
}

TEST_CASE("poly additive inverse and products") {
    Poly z1 = P("z1", 2), z2 = P("z2", 2);
    CHECK((z1 + (-z1)).is_zero());
    CHECK((z1 + z2) * (z1 - z2) == P("z1^2 - z2^2", 2));
    CHECK(P("2*z1", 1).scaled(Rational(3, 2)) == P("3*z1", 1));
    CHECK_THROWS_AS(P("z1", 1) + P("z1", 2), ValidationError);
}

TEST_CASE("ring axioms on random triples") {
    DeterministicRng rng(11);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + rng.below(3);
        Poly a = random_poly(rng, n, 3), b = random_poly(rng, n, 3), c = random_poly(rng, n, 3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("partial derivatives") {
    Poly f = P("z1^3 + z2^3", 2);
    CHECK(f.partial_derivative(0) == P("3*z1^2", 2));
    CHECK(f.partial_derivative(1) == P("3*z2^2", 2));
    CHECK(P("5", 1).partial_derivative(0).is_zero());
    CHECK_THROWS_AS(f.partial_derivative(2), ValidationError);
}

TEST_CASE("coefficient extraction") {
    Poly p = P("3*z1*z2^2", 2);
    CHECK(p.coefficient_of(Monomial{{1, 2}}) == Rational(3));
    CHECK(P("z1", 2).coefficient_of(Monomial{{0, 1}}) == Rational(0));
    CHECK(Poly(2).coefficient_of(Monomial{{4, 4}}) == Rational(0));
}

TEST_CASE("truncated inverse") {
    CHECK(truncated_inverse(P("1 - z1", 1), 2) == P("1 + z1 + z1^2", 1));
    CHECK(truncated_inverse(P("2", 1), 5) == P("1/2", 1));
    // multiply back: the degree <= 1 part must be exactly 1
    Poly u = P("1 + z1 + z2", 2);
    Poly inv = truncated_inverse(u, 1);
    CHECK(inv == P("1 - z1 - z2", 2));
    CHECK((u * inv).truncate_total_degree(1) == P("1", 2));
    CHECK_THROWS_AS(truncated_inverse(P("z1", 1), 3), ValidationError);
}

TEST_CASE("truncated inverse round-trips on random units") {
    DeterministicRng rng(12);
    int done = 0;
    while (done < 50) {
        std::size_t n = 1 + rng.below(2);
        Poly u = random_poly(rng, n, 3);
        if (u.constant_term().is_zero()) u += Poly::constant(n, Rational(rng.int_between(1, 3)));
        unsigned k = 1 + static_cast<unsigned>(rng.below(6));
        Poly inv = truncated_inverse(u, k);
        Poly one = Poly::constant(n, 1);
        CHECK((u * inv).truncate_total_degree(k) == one);
        ++done;
    }
}

TEST_CASE("monomial orders") {
    MonomialOrder drl = MonomialOrder::degrevlex();
    // in degrevlex with z1 > z2: z1^2 > z1 z2 > z2^2
    CHECK(drl.greater(Monomial{{2, 0}}, Monomial{{1, 1}}));
    CHECK(drl.greater(Monomial{{1, 1}}, Monomial{{0, 2}}));
    CHECK(drl.greater(Monomial{{1, 0}}, Monomial{{0, 1}}));
    MonomialOrder lex = MonomialOrder::lex();
    CHECK(lex.greater(Monomial{{1, 0}}, Monomial{{0, 5}}));
    // degrevlex beyond lex: z1 z2^2 > z1^2 via total degree
    CHECK(drl.greater(Monomial{{1, 2}}, Monomial{{2, 0}}));
    // block order: the first block dominates regardless of total degree
    MonomialOrder blk = MonomialOrder::block(1);
    CHECK(blk.greater(Monomial{{1, 0}}, Monomial{{0, 5}}));
    CHECK(blk.greater(Monomial{{0, 2}}, Monomial{{0, 1}}));
    // permuted lex compares through the permutation
    MonomialOrder plex{MonomialOrder::Kind::lex, {1, 0}, 0};
    CHECK(plex.greater(Monomial{{0, 1}}, Monomial{{5, 0}}));
}

TEST_CASE("orders are compatible with multiplication") {
    DeterministicRng rng(13);
    std::vector<MonomialOrder> orders{MonomialOrder::degrevlex(), MonomialOrder::lex(),
                                      MonomialOrder::block(1)};
    for (int t = 0; t < 60; ++t) {
        auto rand_mon = [&] {
            std::vector<unsigned> e(2);
            e[0] = static_cast<unsigned>(rng.below(4));
            e[1] = static_cast<unsigned>(rng.below(4));
            return Monomial{std::move(e)};
        };
        Monomial a = rand_mon(), b = rand_mon(), c = rand_mon();
        for (const auto& ord : orders)
            if (ord.greater(a, b)) CHECK(ord.greater(a * c, b * c));
    }
}

TEST_CASE("parse and print round trip") {
    auto names = default_variable_names(2);
    for (const std::string s : {"z1^3 - 2/3*z1*z2 + 1", "-z1 + z2", "0", "5/7", "z1*z2"}) {
        Poly p = Poly::parse(s, names);
        CHECK(Poly::parse(p.to_string(names), names) == p);
    }
    CHECK(P("z1 + z1", 1) == P("2*z1", 1));
    CHECK(P("3/2*z1^2*z2", 2).to_string(names) == "3/2*z1^2*z2");
    CHECK_THROWS_AS(Poly::parse("z3", default_variable_names(2)), ParseError);
    CHECK_THROWS_AS(Poly::parse("1 +", default_variable_names(1)), ParseError);
    CHECK_THROWS_AS(Poly::parse("", default_variable_names(1)), ParseError);
}

TEST_CASE("translation and evaluation") {
    Poly p = P("z1^2", 1);
    Poly shifted = p.translate({Rational(1)});
    CHECK(shifted == P("z1^2 + 2*z1 + 1", 1));
    CHECK(p.evaluate(std::vector<Rational>{Rational(3)}) == Rational(9));
}
