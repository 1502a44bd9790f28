#include <doctest.h>

#include "mfcy/error.hpp"
#include "mfcy/hochschild.hpp"
#include "mfcy/verify.hpp"

using namespace mfcy;

namespace {
Poly P(const std::string& s, std::size_t n) { return Poly::parse(s, default_variable_names(n)); }

struct Fixture {
    SuperpotentialPtr w = std::make_shared<Superpotential>(P("z1^2", 1));
    FactorizationPtr d = MatrixFactorization::koszul(w, {{P("z1", 1), P("z1", 1)}});

    Morphism odd(const std::string& a, const std::string& b) const {
        return Morphism(d, d, BlockMatrix::odd(PolyMatrix(1, 1, P(a, 1)), PolyMatrix(1, 1, P(b, 1))));
    }
    Morphism even(const std::string& a, const std::string& b) const {
        return Morphism(d, d, BlockMatrix::even(PolyMatrix(1, 1, P(a, 1)), PolyMatrix(1, 1, P(b, 1))));
    }
};
} // namespace

TEST_CASE("chain bookkeeping") {
    Fixture fx;
    Chain c({fx.odd("1", "-1"), fx.even("z1", "0")});
    CHECK(c.length() == 2);
    CHECK(c.phi(2).parity() == Parity::odd);     // outermost
    CHECK(c.phi(1).parity() == Parity::even);    // innermost
    // eps_2 = |s Phi_2| = 0, eps_1 = |s Phi_2| + |s Phi_1| = 1
    CHECK(c.eps(2) == 0);
    CHECK(c.eps(1) == 1);
    CHECK_THROWS_AS(Chain({}), ValidationError);
}

TEST_CASE("b_delta on short chains") {
    Fixture fx;
    // a delta-cocycle is killed in length one
    Chain cocycle({fx.odd("1", "-1")});
    CHECK(b_delta(cocycle).is_zero());
    // generic length one: the single term [delta Phi]
    Chain c1({fx.odd("1", "0")});
    ChainSum bd = b_delta(c1);
    REQUIRE(bd.terms().size() == 1);
    CHECK(bd.terms()[0].first == Rational(1));
    CHECK(bd.terms()[0].second.phi(1) == delta(c1.phi(1)));
    // both odd, length two: plus sign on the inner slot
    Chain c2({fx.odd("z1", "0"), fx.odd("0", "1")});
    ChainSum bd2 = b_delta(c2);
    ChainSum expect;
    expect.add(Rational(1), Chain({delta(c2.phi(2)), c2.phi(1)}));
    expect.add(Rational(1), Chain({c2.phi(2), delta(c2.phi(1))}));
    CHECK(bd2 == expect);
}

TEST_CASE("b_mu on short chains") {
    Fixture fx;
    Chain c1({fx.odd("1", "0")});
    CHECK(b_mu(c1).is_zero());
    CHECK(b_mu_prime(c1).is_zero());
    CHECK(b_mu_doubleprime(c1).is_zero());

    // both odd: b_mu(Phi2[Phi1]) = -Phi2 Phi1 - Phi1 Phi2
    Morphism p2 = fx.odd("z1", "1"), p1 = fx.odd("1", "-1");
    Chain c({p2, p1});
    ChainSum expect;
    expect.add(Rational(-1), Chain({compose(p2, p1)}));
    expect.add(Rational(-1), Chain({compose(p1, p2)}));
    CHECK(b_mu(c) == expect);

    // b'' keeps only the outer merge
    ChainSum expect_dp;
    expect_dp.add(Rational(-1), Chain({compose(p2, p1)}));
    CHECK(b_mu_doubleprime(c) == expect_dp);

    // b' keeps only the wrap term
    ChainSum expect_p;
    expect_p.add(Rational(-1), Chain({compose(p1, p2)}));
    CHECK(b_mu_prime(c) == expect_p);
}

TEST_CASE("tau on short chains") {
    Fixture fx;
    Chain c1({fx.odd("1", "0")});
    CHECK(tau(c1) == ChainSum(Rational(1), c1));
    CHECK(norm_n(c1) == ChainSum(Rational(1), c1));

    // both odd: plus sign
    Morphism p2 = fx.odd("z1", "1"), p1 = fx.odd("1", "-1");
    Chain c({p2, p1});
    CHECK(tau(c) == ChainSum(Rational(1), Chain({p1, p2})));

    // Phi2 even, Phi1 odd: sign (+1) as the remaining shifted parity vanishes
    Morphism e2 = fx.even("z1", "1");
    Chain c2({e2, p1});
    CHECK(tau(c2) == ChainSum(Rational(1), Chain({p1, e2})));

    // both even: sign -1
    Morphism e1 = fx.even("0", "1");
    Chain c3({e2, e1});
    CHECK(tau(c3) == ChainSum(Rational(-1), Chain({e1, e2})));
}

TEST_CASE("structural identities on random chains") {
    DeterministicRng rng(51);
    auto corpus = standard_corpus();
    for (int t = 0; t < 60; ++t) {
        const CorpusEntry& entry = corpus[rng.below(2)];   // one-variable entries keep it cheap
        std::size_t l = 1 + rng.below(4);
        Chain c = random_chain(rng, entry.objects, l, 2);

        CHECK(full_b(full_b(c)).is_zero());

        ChainSum omt = ChainSum(Rational(1), c) - tau(c);
        CHECK(b_delta(omt) == b_delta(c) - tau(b_delta(c)));
        CHECK(b_mu(omt) == b_mu_prime(c) - tau(b_mu_prime(c)));
        CHECK(norm_n(b_delta(c)) == b_delta(norm_n(c)));
        CHECK(norm_n(b_mu(c)) == b_mu_doubleprime(norm_n(c)));

        ChainSum rot(Rational(1), c);
        for (std::size_t i = 0; i < l; ++i) rot = tau(rot);
        CHECK(rot == ChainSum(Rational(1), c));
        // eps_1 is rotation invariant
        for (const auto& [coef, rc] : tau(c).terms()) CHECK(rc.eps(1) == c.eps(1));
    }
}

TEST_CASE("chain sums merge structurally equal chains") {
    Fixture fx;
    Chain c({fx.odd("1", "-1")});
    ChainSum s;
    s.add(Rational(1, 2), c);
    s.add(Rational(1, 2), c);
    REQUIRE(s.terms().size() == 1);
    CHECK(s.terms()[0].first == Rational(1));
    s.add(Rational(-1), c);
    CHECK(s.is_zero());
}
