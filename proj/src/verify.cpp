#include "mfcy/verify.hpp"

#include <cmath>
#include <sstream>

#include "mfcy/error.hpp"
#include "mfcy/residue.hpp"

namespace mfcy {

Poly random_poly(DeterministicRng& rng, std::size_t nvars, unsigned maxdeg) {
    Poly p(nvars);
    std::vector<unsigned> e(nvars, 0);
    for (;;) {
        unsigned deg = 0;
        for (unsigned x : e) deg += x;
        if (deg <= maxdeg && rng.below(2) == 0) {
            long c = rng.int_between(-2, 2);
            if (c != 0) p += Poly::term(Monomial{std::vector<unsigned>(e)}, Rational(c));
        }
        std::size_t i = 0;
        while (i < nvars) {
            if (++e[i] <= maxdeg) break;
            e[i] = 0;
            ++i;
        }
        if (i == nvars) break;
    }
    return p;
}

Morphism random_morphism(DeterministicRng& rng, const FactorizationPtr& source,
                         const FactorizationPtr& target, Parity parity, unsigned maxdeg) {
    const std::size_t rows = target->size(), cols = source->size(), nv = source->nvars();
    PolyMatrix a = poly_zero_matrix(rows, cols, nv), b = poly_zero_matrix(rows, cols, nv);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            a.at(i, j) = random_poly(rng, nv, maxdeg);
            b.at(i, j) = random_poly(rng, nv, maxdeg);
        }
    BlockMatrix m = parity == Parity::even ? BlockMatrix::even(std::move(a), std::move(b))
                                           : BlockMatrix::odd(std::move(a), std::move(b));
    return Morphism(source, target, std::move(m));
}

Chain random_chain(DeterministicRng& rng, const std::vector<FactorizationPtr>& objects,
                   std::size_t length, unsigned maxdeg) {
    std::vector<FactorizationPtr> route(length);
    for (std::size_t i = 0; i < length; ++i) route[i] = objects[rng.below(objects.size())];
    std::vector<Morphism> entries;   // display order Phi_l first
    for (std::size_t s = length; s >= 1; --s) {
        const FactorizationPtr& src = route[s - 1];
        const FactorizationPtr& tgt = s == length ? route[0] : route[s];
        Parity p = rng.below(2) == 0 ? Parity::even : Parity::odd;
        entries.push_back(random_morphism(rng, src, tgt, p, maxdeg));
    }
    return Chain(std::move(entries));
}

std::vector<CorpusEntry> standard_corpus() {
    std::vector<CorpusEntry> corpus;
    {
        std::vector<std::string> names{"z1"};
        Poly z = Poly::variable(1, 0);
        auto w3 = std::make_shared<Superpotential>(z.pow(3));
        CorpusEntry e;
        e.name = "z^3";
        e.w = w3;
        e.objects.push_back(MatrixFactorization::koszul(w3, {{z, z * z}}));
        e.objects.push_back(MatrixFactorization::koszul(w3, {{z * z, z}}));
        e.objects.push_back(MatrixFactorization::koszul(w3, {{z, z * z}, {Poly(1), Poly(1)}}));
        corpus.push_back(std::move(e));

        auto w4 = std::make_shared<Superpotential>(z.pow(4));
        CorpusEntry e4;
        e4.name = "z^4";
        e4.w = w4;
        e4.objects.push_back(MatrixFactorization::koszul(w4, {{z, z.pow(3)}}));
        e4.objects.push_back(MatrixFactorization::koszul(w4, {{z * z, z * z}}));
        e4.objects.push_back(MatrixFactorization::koszul(w4, {{z.pow(3), z}}));
        corpus.push_back(std::move(e4));
    }
    {
        Poly z1 = Poly::variable(2, 0), z2 = Poly::variable(2, 1);
        auto w = std::make_shared<Superpotential>(z1.pow(3) + z2.pow(3));
        CorpusEntry e;
        e.name = "z1^3+z2^3";
        e.w = w;
        e.objects.push_back(MatrixFactorization::koszul(w, {{z1, z1 * z1}, {z2, z2 * z2}}));
        e.objects.push_back(MatrixFactorization::koszul(w, {{z1 * z1, z1}, {z2 * z2, z2}}));
        corpus.push_back(std::move(e));
    }
    {
        Poly z1 = Poly::variable(3, 0), z2 = Poly::variable(3, 1), z3 = Poly::variable(3, 2);
        auto w = std::make_shared<Superpotential>(z1 * z1 + z2 * z2 + z3 * z3);
        CorpusEntry e;
        e.name = "z1^2+z2^2+z3^2";
        e.w = w;
        e.objects.push_back(MatrixFactorization::koszul(w, {{z1, z1}, {z2, z2}, {z3, z3}}));
        corpus.push_back(std::move(e));
    }
    return corpus;
}

namespace {

struct Suite {
    VerifyOptions opts;
    std::vector<CheckResult> results;

    ThetaOptions theta_opts() const {
        ThetaOptions t;
        t.budget = opts.budget;
        t.threads = opts.threads;
        return t;
    }

    void record(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    }

    // ---- corpus chain pools ------------------------------------------------

    // Criterion-1 pool: >= 100 chains of length <= 3, entry degree <= 2,
    // weighted toward the cheap superpotentials.
    std::vector<std::pair<std::size_t, Chain>> theta_pool(const std::vector<CorpusEntry>& corpus,
                                                          DeterministicRng& rng) const {
        std::vector<std::size_t> counts;
        if (opts.corpus == "smoke")
            counts = {6, 4, 4, 2};
        else
            counts = {40, 30, 22, 12};
        std::vector<std::pair<std::size_t, Chain>> pool;
        for (std::size_t ci = 0; ci < corpus.size(); ++ci) {
            const CorpusEntry& entry = corpus[ci];
            const bool expensive = entry.w->nvars() >= 3;
            for (std::size_t t = 0; t < counts[ci]; ++t) {
                std::size_t l = 1 + t % 3;
                if (expensive && l == 3 && t % 3 == 2 && t > 8) l = 2;   // keep the n=3 tail affordable
                pool.push_back({ci, random_chain(rng, entry.objects, l, 2)});
            }
        }
        return pool;
    }

    // ---- checks ------------------------------------------------------------

    void check_theta_cocycle_and_cyclicity(const std::vector<CorpusEntry>& corpus) {
        DeterministicRng rng(opts.seed);
        auto pool = theta_pool(corpus, rng);
        std::size_t bad_b = 0, bad_tau = 0;
        for (const auto& [ci, chain] : pool) {
            VolumeForm om = VolumeForm::standard(corpus[ci].w->nvars());
            Rational tb = theta(full_b(chain), om, theta_opts()).value;
            if (!tb.is_zero()) ++bad_b;
            Rational tc = theta(chain, om, theta_opts()).value;
            Rational tt = theta(tau(chain), om, theta_opts()).value;
            if (tc != tt) ++bad_tau;
        }
        std::ostringstream d;
        d << pool.size() << " chains";
        record("theta_cocycle_law", bad_b == 0, d.str() + ", violations=" + std::to_string(bad_b));
        record("theta_cyclicity", bad_tau == 0, d.str() + ", violations=" + std::to_string(bad_tau));
    }

    void check_kl_reduction(const std::vector<CorpusEntry>& corpus) {
        DeterministicRng rng(opts.seed + 1);
        std::size_t bad = 0, total = 0;
        const std::size_t per_entry = opts.corpus == "smoke" ? 8 : 50;
        for (const CorpusEntry& entry : corpus) {
            VolumeForm om = VolumeForm::standard(entry.w->nvars());
            for (std::size_t t = 0; t < per_entry; ++t) {
                const FactorizationPtr& d = entry.objects[rng.below(entry.objects.size())];
                Parity p = t % 2 == 0 ? Parity::even : Parity::odd;
                Morphism seed = random_morphism(rng, d, d, p, 2);
                Morphism phi = delta(seed);   // coboundaries are cocycles
                if (phi.parity() == Parity::even && t % 4 == 1)
                    phi = phi + Morphism::identity(d).scaled(Rational(rng.int_between(-2, 2)));
                Rational a = theta(Chain({phi}), om, theta_opts()).value;
                Rational b = theta_kl(phi, om, theta_opts());
                ++total;
                if (a != b) ++bad;
            }
        }
        record("kl_reduction", bad == 0,
               std::to_string(total) + " cocycles, violations=" + std::to_string(bad));
    }

    void check_corr_identity(const std::vector<CorpusEntry>& corpus) {
        DeterministicRng rng(opts.seed + 2);
        std::size_t bad_defect = 0, bad_sym = 0, total = 0;
        const std::size_t pairs = opts.corpus == "smoke" ? 10 : 50;
        for (const CorpusEntry& entry : corpus) {
            if (entry.name != "z^3" && entry.name != "z1^3+z2^3") continue;
            VolumeForm om = VolumeForm::standard(entry.w->nvars());
            for (std::size_t t = 0; t < pairs; ++t) {
                const FactorizationPtr& dp = entry.objects[rng.below(entry.objects.size())];
                const FactorizationPtr& dpp = entry.objects[rng.below(entry.objects.size())];
                Parity p1 = rng.below(2) ? Parity::even : Parity::odd;
                Parity p2 = rng.below(2) ? Parity::even : Parity::odd;
                Morphism phi_in = random_morphism(rng, dp, dpp, p1, 2);    // D' -> D''
                Morphism phi_out = random_morphism(rng, dpp, dp, p2, 2);   // D'' -> D'
                ++total;

                int s12 = parity_bit(phi_in.parity()) * parity_bit(phi_out.parity());
                // defect identity
                Rational t1 = theta_kl(compose(phi_out, phi_in), om, theta_opts());
                Rational t2 = theta_kl(compose(phi_in, phi_out), om, theta_opts());
                Rational left = t1 - (s12 % 2 == 0 ? t2 : -t2);
                Rational r1 = theta_tilde(phi_out, delta(phi_in), om, theta_opts());
                Rational r2 = theta_tilde(delta(phi_out), phi_in, om, theta_opts());
                Rational right = r1 - (parity_bit(phi_out.parity()) % 2 == 0 ? r2 : -r2);
                if (left != right) ++bad_defect;

                // graded cyclic symmetry of the correction functional
                Rational s_a = theta_tilde(phi_out, phi_in, om, theta_opts());
                Rational s_b = theta_tilde(phi_in, phi_out, om, theta_opts());
                int expo = (parity_bit(phi_in.parity()) + 1) * (parity_bit(phi_out.parity()) + 1);
                if (s_a != (expo % 2 == 0 ? s_b : -s_b)) ++bad_sym;
            }
        }
        record("corr_defect_identity", bad_defect == 0,
               std::to_string(total) + " pairs, violations=" + std::to_string(bad_defect));
        record("tilde_graded_symmetry", bad_sym == 0,
               std::to_string(total) + " pairs, violations=" + std::to_string(bad_sym));
    }

    void check_worked_constants(const std::vector<CorpusEntry>& corpus) {
        bool ok = true;
        std::ostringstream d;
        {
            // f = z^3, D = (z, z^2), cocycle blocks (-1, z): value 1.
            const CorpusEntry& e3 = corpus[0];
            const FactorizationPtr& dk = e3.objects[0];
            PolyMatrix b12(1, 1, Poly::constant(1, Rational(-1)));
            PolyMatrix b21(1, 1, Poly::variable(1, 0));
            Morphism phi(dk, dk, BlockMatrix::odd(b12, b21));
            Rational v = theta_kl(phi, VolumeForm::standard(1), theta_opts());
            d << "theta_kl(z^3)=" << v.to_string();
            ok = ok && v == Rational(1);
        }
        {
            // f = z^2, D = (z, z), cocycle blocks (1, -1): value -1.
            Poly z = Poly::variable(1, 0);
            auto w2 = std::make_shared<Superpotential>(z * z);
            auto dz = MatrixFactorization::koszul(w2, {{z, z}});
            PolyMatrix b12(1, 1, Poly::constant(1, Rational(1)));
            PolyMatrix b21(1, 1, Poly::constant(1, Rational(-1)));
            Morphism phi(dz, dz, BlockMatrix::odd(b12, b21));
            Rational v = theta_kl(phi, VolumeForm::standard(1), theta_opts());
            d << ", theta_kl(z^2)=" << v.to_string();
            ok = ok && v == Rational(-1);
        }
        record("worked_constants", ok, d.str());
    }

    void check_one_variable_closed_form(const std::vector<CorpusEntry>& corpus) {
        DeterministicRng rng(opts.seed + 3);
        std::size_t bad = 0, total = 0;
        const std::size_t per_len = opts.corpus == "smoke" ? 1 : 3;
        for (const CorpusEntry& entry : corpus) {
            if (entry.w->nvars() != 1) continue;
            VolumeForm om = VolumeForm::standard(1);
            for (std::size_t l = 1; l <= 4; ++l)
                for (std::size_t t = 0; t < per_len; ++t) {
                    Chain c = random_chain(rng, entry.objects, l, 2);
                    Rational a = theta(c, om, theta_opts()).value;
                    Rational b = theta_one_variable_reference(c, om, theta_opts());
                    ++total;
                    if (a != b) ++bad;
                }
        }
        record("one_variable_closed_form", bad == 0,
               std::to_string(total) + " chains, violations=" + std::to_string(bad));
    }

    void check_residue_milnor(const std::vector<CorpusEntry>&) {
        // Brieskorn-Pham exponent lists with mu = prod (a_i - 1) <= 16.
        std::vector<std::vector<unsigned>> shapes{{3},     {4},        {17},      {3, 3},
                                                  {3, 4},  {4, 4},     {3, 7},    {2, 2, 2},
                                                  {3, 3, 3}, {2, 3, 4}};
        std::size_t bad = 0;
        for (const auto& shape : shapes) {
            const std::size_t n = shape.size();
            Poly f(n);
            for (std::size_t i = 0; i < n; ++i) f += Poly::variable(n, i).pow(shape[i]);
            CriticalLocus cl = critical_locus(f);
            std::size_t mu = 1;
            for (unsigned a : shape) mu *= (a - 1);
            if (cl.milnor_number != mu) { ++bad; continue; }
            // Hessian determinant
            Matrix<Poly> hess(n, n, Poly(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    hess.at(i, j) = f.partial_derivative(i).partial_derivative(j);
            ResidueQuery q;
            q.numerator = poly_det_bareiss(hess);
            for (std::size_t i = 0; i < n; ++i) q.denominators.push_back({f.partial_derivative(i), 1});
            Rational res = residue_total(q);
            if (res != Rational(static_cast<long>(mu))) ++bad;
        }
        record("residue_milnor_identity", bad == 0,
               std::to_string(shapes.size()) + " superpotentials, violations=" + std::to_string(bad));
    }

    void check_residue_backends(const std::vector<CorpusEntry>&) {
        DeterministicRng rng(opts.seed + 4);
        std::size_t bad = 0, total = 0;
        for (std::size_t t = 0; t < 30; ++t) {
            std::size_t n = 1 + t % 2;
            ResidueQuery q;
            q.numerator = random_poly(rng, n, 3);
            if (q.numerator.is_zero()) q.numerator = Poly::constant(n, 1);
            bool with_unit = n == 2 && t % 3 == 0;
            for (std::size_t i = 0; i < n; ++i) {
                unsigned e = 1 + static_cast<unsigned>(rng.below(2));
                long c = rng.below(2) ? 2 : 1;
                Poly g = Poly::term(Monomial::variable(n, i, e), Rational(c));
                if (with_unit && i == 0) {
                    // unit factor in the other variable keeps the common zero unique
                    Poly unit = Poly::constant(n, 1) + Poly::variable(n, 1).scaled(Rational(rng.int_between(1, 2)));
                    g = g * unit;
                }
                unsigned s = 1 + static_cast<unsigned>(rng.below(2));
                q.denominators.push_back({g, s});
            }
            Rational a = residue_monomial(q);
            Rational b = residue_total(q);
            ResidueQuery ql = q;
            ql.point = std::vector<Rational>(n, Rational(0));
            Rational c = residue_local(ql);
            ++total;
            if (a != b || a != c) ++bad;
        }
        record("residue_backend_agreement", bad == 0,
               std::to_string(total) + " queries, violations=" + std::to_string(bad));
    }

    void check_residue_oracle(const std::vector<CorpusEntry>&) {
        DeterministicRng rng(opts.seed + 5);
        std::size_t bad = 0;
        const std::vector<Rational> points{Rational(0), Rational(1), Rational(-1), Rational(1, 2),
                                           Rational(-1, 2)};
        for (std::size_t t = 0; t < 20; ++t) {
            Rational x = points[rng.below(points.size())];
            unsigned m = 1 + static_cast<unsigned>(rng.below(2));
            unsigned s = 1 + static_cast<unsigned>(rng.below(2));
            Poly z = Poly::variable(1, 0);
            Poly zero_factor = (z - Poly::constant(1, x)).pow(m);
            // distant unit roots keep the contour clean
            Poly unit = (z - Poly::constant(1, Rational(3))) * (z + Poly::constant(1, Rational(4)));
            Poly g = zero_factor * unit;
            Poly h = random_poly(rng, 1, 3);
            if (h.is_zero()) h = Poly::constant(1, 1);
            Rational exact = residue_univariate(h, g, s, x);
            double numeric = contour_oracle_1d(h, g, s, x.to_double(), 0.5, 8192);
            if (std::abs(numeric - exact.to_double()) > 1e-8) ++bad;
        }
        record("residue_contour_oracle", bad == 0, "20 queries, violations=" + std::to_string(bad));
    }

    // Cocycle families between the objects D_a = (z^a, z^{d-a}) of f = z^d.
    // callers pass t >= max(0, s_exp - t_exp) so the exponent is nonnegative
    static Morphism even_cocycle(const FactorizationPtr& src, const FactorizationPtr& tgt,
                                 unsigned s_exp, unsigned t_exp, unsigned t) {
        Poly z = Poly::variable(1, 0);
        PolyMatrix b11(1, 1, z.pow(t + t_exp - s_exp));
        PolyMatrix b22(1, 1, z.pow(t));
        return Morphism(src, tgt, BlockMatrix::even(b11, b22));
    }
    static Morphism odd_cocycle(const FactorizationPtr& src, const FactorizationPtr& tgt,
                                unsigned d, unsigned s_exp, unsigned t_exp, unsigned t) {
        Poly z = Poly::variable(1, 0);
        PolyMatrix b12(1, 1, z.pow(t));
        PolyMatrix b21(1, 1, z.pow(d - s_exp - t_exp + t).scaled(Rational(-1)));
        return Morphism(src, tgt, BlockMatrix::odd(b12, b21));
    }

    void check_nondegeneracy() {
        std::size_t bad = 0, grams = 0;
        std::ostringstream detail;
        for (unsigned d = 3; d <= 5; ++d) {
            Poly z = Poly::variable(1, 0);
            auto w = std::make_shared<Superpotential>(z.pow(d));
            std::vector<FactorizationPtr> objs(d);   // objs[a] = (z^a, z^{d-a})
            for (unsigned a = 1; a < d; ++a)
                objs[a] = MatrixFactorization::koszul(w, {{z.pow(a), z.pow(d - a)}});
            VolumeForm om = VolumeForm::standard(1);
            for (unsigned a = 1; a < d; ++a)
                for (unsigned b = 1; b < d; ++b) {
                    unsigned m = std::min(std::min(a, b), std::min(d - a, d - b));
                    if (m == 0) continue;
                    // even family in Hom(D_b -> D_a), odd family in Hom(D_a -> D_b)
                    std::vector<Morphism> evens, odds;
                    unsigned t0e = b > a ? b - a : 0;
                    unsigned t0o = a + b > d ? a + b - d : 0;
                    bool certified = true;
                    for (unsigned t = 0; t < m; ++t) {
                        Morphism e = even_cocycle(objs[b], objs[a], b, a, t0e + t);
                        Morphism o = odd_cocycle(objs[a], objs[b], d, a, b, t0o + t);
                        if (!delta(e).block().is_zero() || !delta(o).block().is_zero()) certified = false;
                        if (is_coboundary(e, 2 * d).is_coboundary) certified = false;
                        if (is_coboundary(o, 2 * d).is_coboundary) certified = false;
                        evens.push_back(std::move(e));
                        odds.push_back(std::move(o));
                    }
                    auto g = gram_matrix(evens, odds, om, theta_opts());
                    Matrix<Rational> gm(m, m, Rational(0));
                    for (unsigned i = 0; i < m; ++i)
                        for (unsigned j = 0; j < m; ++j) gm.at(i, j) = g[i][j];
                    ++grams;
                    if (!certified || rational_rank(gm) != m) ++bad;
                }
        }
        record("nondegeneracy_gram", bad == 0,
               std::to_string(grams) + " gram matrices, violations=" + std::to_string(bad));
    }

    void check_structural_identities(const std::vector<CorpusEntry>& corpus) {
        DeterministicRng rng(opts.seed + 6);
        std::size_t bad_b2 = 0, bad_tau_delta = 0, bad_tau_mu = 0, bad_n_delta = 0, bad_n_mu = 0,
                    bad_tau_power = 0;
        const std::size_t count = opts.corpus == "smoke" ? 20 : 100;
        for (std::size_t t = 0; t < count; ++t) {
            const CorpusEntry& entry = corpus[rng.below(corpus.size())];
            std::size_t l = 1 + rng.below(4);
            Chain c = random_chain(rng, entry.objects, l, 2);

            if (!full_b(full_b(c)).is_zero()) ++bad_b2;

            ChainSum tc = tau(c);
            ChainSum one_minus_tau = ChainSum(Rational(1), c) - tc;
            if (!(b_delta(one_minus_tau) == (b_delta(c) - tau(b_delta(c))))) ++bad_tau_delta;
            if (!(b_mu(one_minus_tau) == (b_mu_prime(c) - tau(b_mu_prime(c))))) ++bad_tau_mu;

            if (!(norm_n(b_delta(c)) == b_delta(norm_n(c)))) ++bad_n_delta;
            if (!(norm_n(b_mu(c)) == b_mu_doubleprime(norm_n(c)))) ++bad_n_mu;

            ChainSum rot(Rational(1), c);
            for (std::size_t i = 0; i < l; ++i) rot = tau(rot);
            if (!(rot == ChainSum(Rational(1), c))) ++bad_tau_power;
        }
        record("structural_b_squared", bad_b2 == 0,
               std::to_string(count) + " chains, violations=" + std::to_string(bad_b2));
        record("structural_tau_compatibility", bad_tau_delta + bad_tau_mu == 0,
               "violations_delta=" + std::to_string(bad_tau_delta) +
                   ", violations_mu=" + std::to_string(bad_tau_mu));
        record("structural_norm_compatibility", bad_n_delta + bad_n_mu == 0,
               "violations_delta=" + std::to_string(bad_n_delta) +
                   ", violations_mu=" + std::to_string(bad_n_mu));
        record("structural_tau_power", bad_tau_power == 0,
               std::to_string(count) + " chains, violations=" + std::to_string(bad_tau_power));
    }
};

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
    if (opts.corpus != "standard" && opts.corpus != "smoke")
        throw ValidationError("unknown corpus '" + opts.corpus + "' (expected 'standard' or 'smoke')");
    Suite suite{opts, {}};
    std::vector<CorpusEntry> corpus = standard_corpus();
    suite.check_structural_identities(corpus);
    suite.check_worked_constants(corpus);
    suite.check_residue_milnor(corpus);
    suite.check_residue_backends(corpus);
    suite.check_residue_oracle(corpus);
    suite.check_one_variable_closed_form(corpus);
    suite.check_kl_reduction(corpus);
    suite.check_corr_identity(corpus);
    suite.check_nondegeneracy();
    suite.check_theta_cocycle_and_cyclicity(corpus);
    return std::move(suite.results);
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace mfcy
