#include <doctest.h>

#include "mfcy/cy.hpp"
#include "mfcy/error.hpp"
#include "mfcy/verify.hpp"

using namespace mfcy;

namespace {
Poly P(const std::string& s, std::size_t n) { return Poly::parse(s, default_variable_names(n)); }

struct OneVar {
    SuperpotentialPtr w3 = std::make_shared<Superpotential>(P("z1^3", 1));
    FactorizationPtr d3 = MatrixFactorization::koszul(w3, {{P("z1", 1), P("z1^2", 1)}});
    SuperpotentialPtr w2 = std::make_shared<Superpotential>(P("z1^2", 1));
    FactorizationPtr d2 = MatrixFactorization::koszul(w2, {{P("z1", 1), P("z1", 1)}});

    Morphism cocycle3() const {
        return Morphism(d3, d3, BlockMatrix::odd(PolyMatrix(1, 1, P("-1", 1)), PolyMatrix(1, 1, P("z1", 1))));
    }
    Morphism cocycle2() const {
        return Morphism(d2, d2, BlockMatrix::odd(PolyMatrix(1, 1, P("1", 1)), PolyMatrix(1, 1, P("-1", 1))));
    }
};
} // namespace

TEST_CASE("combinatorial frame cardinalities") {
    CombinatorialFrame f{3, 2};
    auto comps = CombinatorialFrame::compositions(2, 2);
    CHECK(comps.size() == 3);   // (0,2),(1,1),(2,0)
    auto lam = CombinatorialFrame::lambda_tuples({2, 1, 0});
    CHECK(lam.size() == 3);     // 3!/2! = 3
    auto perms = f.permutations_excluding(1);
    CHECK(perms.size() == 2);   // (n-1)! = 2
    int plus = 0, minus = 0;
    for (const auto& [p, s] : perms) (s > 0 ? plus : minus)++;
    CHECK(plus == 1);
    CHECK(minus == 1);
    auto rv = f.r_vectors(0);
    for (const auto& r : rv) { CHECK(r[0] >= 1); CHECK(r[0] + r[1] + r[2] == 2); }
    CHECK(rv.size() == 3);      // (2,0,0),(1,1,0),(1,0,1)
}

TEST_CASE("worked constants") {
    OneVar fx;
    CHECK(theta_kl(fx.cocycle3(), VolumeForm::standard(1)) == Rational(1));
    CHECK(theta_kl(fx.cocycle2(), VolumeForm::standard(1)) == Rational(-1));
    // identity has the wrong parity in one variable
    CHECK(theta_kl(Morphism::identity(fx.d3), VolumeForm::standard(1)) == Rational(0));
}

TEST_CASE("chain functional reduces to the trace in length one") {
    OneVar fx;
    Chain c({fx.cocycle3()});
    ThetaResult r = theta(c, VolumeForm::standard(1));
    CHECK(r.value == Rational(1));
    CHECK(theta(Chain({fx.cocycle2()}), VolumeForm::standard(1)).value == Rational(-1));

    DeterministicRng rng(61);
    auto corpus = standard_corpus();
    for (int t = 0; t < 12; ++t) {
        const CorpusEntry& entry = corpus[t % corpus.size()];
        const FactorizationPtr& d = entry.objects[rng.below(entry.objects.size())];
        Morphism phi = delta(random_morphism(rng, d, d, rng.below(2) ? Parity::even : Parity::odd, 2));
        VolumeForm om = VolumeForm::standard(entry.w->nvars());
        CHECK(theta(Chain({phi}), om).value == theta_kl(phi, om));
    }
}

TEST_CASE("wrong-parity chains vanish structurally") {
    OneVar fx;
    // even endomorphism at n = 1: every supertrace argument is odd
    Morphism even_endo(fx.d3, fx.d3,
                       BlockMatrix::even(PolyMatrix(1, 1, P("z1", 1)), PolyMatrix(1, 1, P("1", 1))));
    ThetaResult r = theta(Chain({even_endo}), VolumeForm::standard(1));
    CHECK(r.value == Rational(0));
    CHECK(r.term_count == 0);   // structural short-circuit, no enumeration
}

TEST_CASE("volume forms enter linearly and must be units") {
    OneVar fx;
    Chain c({fx.cocycle3()});
    VolumeForm om{P("1 + z1", 1)};
    CHECK(theta(c, om).value == Rational(1));   // z1 * (stuff) adds no residue here
    VolumeForm bad{P("z1", 1)};
    CHECK_THROWS_AS(theta(c, bad), ValidationError);
    VolumeForm zero{Poly(1)};
    CHECK_THROWS_AS(theta(c, zero), ValidationError);
}

TEST_CASE("correction functional identities in one variable") {
    DeterministicRng rng(62);
    OneVar fx;
    VolumeForm om = VolumeForm::standard(1);
    for (int t = 0; t < 15; ++t) {
        Parity p1 = rng.below(2) ? Parity::even : Parity::odd;
        Parity p2 = rng.below(2) ? Parity::even : Parity::odd;
        Morphism in = random_morphism(rng, fx.d3, fx.d3, p1, 2);
        Morphism out = random_morphism(rng, fx.d3, fx.d3, p2, 2);
        int s12 = parity_bit(p1) * parity_bit(p2);
        Rational lhs = theta_kl(compose(out, in), om) -
                       (s12 % 2 == 0 ? theta_kl(compose(in, out), om) : -theta_kl(compose(in, out), om));
        Rational rhs = theta_tilde(out, delta(in), om) -
                       (parity_bit(p2) % 2 == 0 ? theta_tilde(delta(out), in, om)
                                                : -theta_tilde(delta(out), in, om));
        CHECK(lhs == rhs);
        int expo = (parity_bit(p1) + 1) * (parity_bit(p2) + 1);
        Rational sym = theta_tilde(in, out, om);
        CHECK(theta_tilde(out, in, om) == (expo % 2 == 0 ? sym : -sym));
    }
}

TEST_CASE("pairing requires cocycles and pairs against the identity") {
    OneVar fx;
    VolumeForm om = VolumeForm::standard(1);
    Morphism psi = fx.cocycle3();
    CHECK(pairing(Morphism::identity(fx.d3), psi, om) == Rational(1));
    CHECK(pairing(psi, Morphism::identity(fx.d3), om) == Rational(1));
    // odd against odd composes to an even endomorphism: parity vanishing
    CHECK(pairing(psi, psi, om) == Rational(0));
    Morphism not_cocycle(fx.d3, fx.d3,
                         BlockMatrix::odd(PolyMatrix(1, 1, P("1", 1)), PolyMatrix(1, 1, Poly(1))));
    CHECK_THROWS_AS(pairing(not_cocycle, psi, om), ValidationError);
}

TEST_CASE("pairing is graded symmetric on cocycle classes") {
    DeterministicRng rng(67);
    auto corpus = standard_corpus();
    for (int t = 0; t < 10; ++t) {
        const CorpusEntry& entry = corpus[t % 3];
        const FactorizationPtr& dp = entry.objects[rng.below(entry.objects.size())];
        const FactorizationPtr& dpp = entry.objects[rng.below(entry.objects.size())];
        Morphism a_in = delta(random_morphism(rng, dp, dpp, rng.below(2) ? Parity::even : Parity::odd, 2));
        Morphism a_out = delta(random_morphism(rng, dpp, dp, rng.below(2) ? Parity::even : Parity::odd, 2));
        VolumeForm om = VolumeForm::standard(entry.w->nvars());
        int sgn = parity_bit(a_in.parity()) * parity_bit(a_out.parity());
        Rational lhs = pairing(a_out, a_in, om);
        Rational rhs = pairing(a_in, a_out, om);
        CHECK(lhs == (sgn % 2 == 0 ? rhs : -rhs));
    }
}

TEST_CASE("coboundary certificates") {
    OneVar fx;
    DeterministicRng rng(63);
    Morphism seed = random_morphism(rng, fx.d3, fx.d3, Parity::even, 2);
    Morphism cob = delta(seed);
    CoboundaryCertificate cert = is_coboundary(cob, 4);
    REQUIRE(cert.is_coboundary);
    CHECK(delta(*cert.witness) == cob);
    // the basis cocycle of z^3 is not a coboundary
    CHECK(!is_coboundary(fx.cocycle3(), 6).is_coboundary);
    // non-cocycles are rejected
    Morphism junk(fx.d3, fx.d3, BlockMatrix::odd(PolyMatrix(1, 1, P("1", 1)), PolyMatrix(1, 1, Poly(1))));
    CHECK_THROWS_AS(is_coboundary(junk, 3), ValidationError);
}

TEST_CASE("gram matrix of the z^4 object family") {
    Poly z = P("z1", 1);
    auto w = std::make_shared<Superpotential>(z.pow(4));
    std::vector<FactorizationPtr> objs;
    for (unsigned a = 1; a <= 3; ++a)
        objs.push_back(MatrixFactorization::koszul(w, {{z.pow(a), z.pow(4 - a)}}));
    VolumeForm om = VolumeForm::standard(1);
    // End(D_2): two-dimensional even and odd cohomology
    std::vector<Morphism> evens, odds;
    for (unsigned t = 0; t < 2; ++t) {
        evens.push_back(Morphism(objs[1], objs[1],
                                 BlockMatrix::even(PolyMatrix(1, 1, z.pow(t)), PolyMatrix(1, 1, z.pow(t)))));
        odds.push_back(Morphism(objs[1], objs[1],
                                BlockMatrix::odd(PolyMatrix(1, 1, z.pow(t)),
                                                 PolyMatrix(1, 1, z.pow(t).scaled(Rational(-1))))));
    }
    auto g = gram_matrix(evens, odds, om);
    Matrix<Rational> gm(2, 2, Rational(0));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gm.at(i, j) = g[i][j];
    CHECK(rational_rank(gm) == 2);
}

TEST_CASE("budget guard refuses oversized evaluations") {
    OneVar fx;
    Chain c({fx.cocycle3()});
    ThetaOptions opts;
    opts.budget = 0;
    CHECK_THROWS_AS(theta(c, VolumeForm::standard(1), opts), BudgetError);
}

TEST_CASE("threaded evaluation is bit-identical") {
    DeterministicRng rng(64);
    auto corpus = standard_corpus();
    const CorpusEntry& entry = corpus[2];   // two variables: several compositions
    for (int t = 0; t < 4; ++t) {
        Chain c = random_chain(rng, entry.objects, 2 + rng.below(2), 2);
        ThetaOptions seq, par;
        par.threads = 4;
        CHECK(theta(c, VolumeForm::standard(2), seq).value == theta(c, VolumeForm::standard(2), par).value);
    }
}

TEST_CASE("length-two chains reproduce the correction functional") {
    DeterministicRng rng(66);
    auto corpus = standard_corpus();
    for (int t = 0; t < 12; ++t) {
        const CorpusEntry& entry = corpus[t % 3];
        const FactorizationPtr& dp = entry.objects[rng.below(entry.objects.size())];
        const FactorizationPtr& dpp = entry.objects[rng.below(entry.objects.size())];
        Morphism in = random_morphism(rng, dp, dpp, rng.below(2) ? Parity::even : Parity::odd, 2);
        Morphism out = random_morphism(rng, dpp, dp, rng.below(2) ? Parity::even : Parity::odd, 2);
        VolumeForm om = VolumeForm::standard(entry.w->nvars());
        CHECK(theta(Chain({out, in}), om).value == theta_tilde(out, in, om));
    }
}

TEST_CASE("total value is the sum over rational critical points") {
    // f = 1/4 z^4 - 1/2 z^2 has critical points 0, 1, -1
    auto w = std::make_shared<Superpotential>(P("1/4*z1^4 - 1/2*z1^2", 1));
    auto d = MatrixFactorization::koszul(w, {{P("1/2*z1^2", 1), P("1/2*z1^2 - 1", 1)}});
    DeterministicRng rng(68);
    VolumeForm om = VolumeForm::standard(1);
    bool saw_nonzero = false;
    for (int t = 0; t < 6; ++t) {
        Chain c = random_chain(rng, {d}, 1 + rng.below(3), 2);
        Rational sum(0);
        for (long x : {0L, 1L, -1L}) {
            ThetaOptions at;
            at.mode = ThetaMode::at_point;
            at.point = std::vector<Rational>{Rational(x)};
            sum += theta(c, om, at).value;
        }
        Rational total = theta(c, om).value;
        CHECK(total == sum);
        if (!total.is_zero()) saw_nonzero = true;
    }
    CHECK(saw_nonzero);
}

TEST_CASE("chains over the three-variable cubic") {
    auto w = std::make_shared<Superpotential>(P("z1^3 + z2^3 + z3^3", 3));
    auto d = MatrixFactorization::koszul(
        w, {{P("z1", 3), P("z1^2", 3)}, {P("z2", 3), P("z2^2", 3)}, {P("z3", 3), P("z3^2", 3)}});
    DeterministicRng rng(69);
    Chain c = random_chain(rng, {d}, 2, 1);
    VolumeForm om = VolumeForm::standard(3);
    CHECK(theta(full_b(c), om).value == Rational(0));
    CHECK(theta(c, om).value == theta(tau(c), om).value);
}

TEST_CASE("one variable closed form agrees") {
    DeterministicRng rng(65);
    auto corpus = standard_corpus();
    for (int t = 0; t < 10; ++t) {
        const CorpusEntry& entry = corpus[t % 2];
        Chain c = random_chain(rng, entry.objects, 1 + rng.below(4), 2);
        VolumeForm om = VolumeForm::standard(1);
        CHECK(theta(c, om).value == theta_one_variable_reference(c, om));
    }
}
