#include "mfcy/groebner.hpp"

#include <algorithm>
#include <deque>

#include "mfcy/error.hpp"

namespace mfcy {

namespace {

struct TrackedPoly {
    Poly p;
    std::vector<Poly> rep;   // p == sum_j rep[j] * input[j]
};

// Full reduction of t by basis; quotients are folded into t.rep.
TrackedPoly reduce_tracked(TrackedPoly t, const std::vector<TrackedPoly>& basis,
                           const MonomialOrder& order) {
    Poly rem(t.p.nvars());
    Poly work = std::move(t.p);
    while (!work.is_zero()) {
        const Monomial lm = work.leading_monomial(order);
        const Rational lc = work.coefficient_of(lm);
        bool reduced = false;
        for (const TrackedPoly& b : basis) {
            if (b.p.is_zero()) continue;
            const Monomial& lmb = b.p.leading_monomial(order);
            if (!lmb.divides(lm)) continue;
            Monomial q = lm.divide_by(lmb);
            Rational c = lc / b.p.coefficient_of(lmb);
            work -= b.p.times_monomial(q, c);
            for (std::size_t j = 0; j < t.rep.size(); ++j)
                t.rep[j] -= b.rep[j].times_monomial(q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem += Poly::term(lm, lc);
            work -= Poly::term(lm, lc);
        }
    }
    t.p = std::move(rem);
    return t;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

} // namespace

GroebnerBasis groebner(const std::vector<Poly>& gens, MonomialOrder order) {
    if (gens.empty()) throw ValidationError("groebner: empty generator list");
    const std::size_t nv = gens.front().nvars();
    for (const Poly& g : gens)
        if (g.nvars() != nv) throw ValidationError("groebner: mixed variable counts");

    std::vector<TrackedPoly> basis;
    auto unit_rep = [&](std::size_t j) {
        std::vector<Poly> rep(gens.size(), Poly(nv));
        rep[j] = Poly::constant(nv, 1);
        return rep;
    };
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].is_zero()) continue;
        TrackedPoly t{gens[j], unit_rep(j)};
        t = reduce_tracked(std::move(t), basis, order);
        if (!t.p.is_zero()) basis.push_back(std::move(t));
    }
    if (basis.empty()) throw ValidationError("groebner: all generators are zero");

    std::deque<Pair> pairs;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            Monomial l = basis[i].p.leading_monomial(order).lcm(basis[k].p.leading_monomial(order));
            // Product criterion: coprime leading monomials yield S-polynomials
            // that reduce to zero.
            Monomial prod = basis[i].p.leading_monomial(order) * basis[k].p.leading_monomial(order);
            if (l == prod) continue;
            pairs.push_back(Pair{i, k, std::move(l)});
        }
    };
    for (std::size_t k = 1; k < basis.size(); ++k) push_pairs(k);

    auto select = [&]() {
        std::size_t best = 0;
        for (std::size_t a = 1; a < pairs.size(); ++a) {
            const Pair &pa = pairs[a], &pb = pairs[best];
            if (order.greater(pb.lcm, pa.lcm) ||
                (pa.lcm == pb.lcm && (pa.i < pb.i || (pa.i == pb.i && pa.j < pb.j))))
                best = a;
        }
        Pair p = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
        return p;
    };

    while (!pairs.empty()) {
        Pair pr = select();
        const TrackedPoly &f = basis[pr.i], &g = basis[pr.j];
        Monomial mf = pr.lcm.divide_by(f.p.leading_monomial(order));
        Monomial mg = pr.lcm.divide_by(g.p.leading_monomial(order));
        Rational cf = f.p.coefficient_of(f.p.leading_monomial(order)).inverse();
        Rational cg = g.p.coefficient_of(g.p.leading_monomial(order)).inverse();
        TrackedPoly s{f.p.times_monomial(mf, cf) - g.p.times_monomial(mg, cg),
                      std::vector<Poly>(gens.size(), Poly(nv))};
        for (std::size_t j = 0; j < gens.size(); ++j)
            s.rep[j] = f.rep[j].times_monomial(mf, cf) - g.rep[j].times_monomial(mg, cg);
        s = reduce_tracked(std::move(s), basis, order);
        if (!s.p.is_zero()) {
            basis.push_back(std::move(s));
            push_pairs(basis.size() - 1);
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by another's.
    std::vector<TrackedPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Monomial& lm = basis[i].p.leading_monomial(order);
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const Monomial& lmj = basis[j].p.leading_monomial(order);
            if (lmj.divides(lm) && (lmj != lm || j < i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // Auto-reduce tails and make monic.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<TrackedPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = reduce_tracked(std::move(minimal[i]), others, order);
        Rational lc = minimal[i].p.leading_coefficient(order);
        minimal[i].p = minimal[i].p.scaled(lc.inverse());
        for (Poly& r : minimal[i].rep) r = r.scaled(lc.inverse());
    }

    std::sort(minimal.begin(), minimal.end(), [&](const TrackedPoly& a, const TrackedPoly& b) {
        return order.greater(a.p.leading_monomial(order), b.p.leading_monomial(order));
    });

    GroebnerBasis gb;
    gb.order = order;
    gb.input_count = gens.size();
    gb.nvars = nv;
    for (TrackedPoly& t : minimal) {
        gb.generators.push_back(std::move(t.p));
        gb.cofactors.push_back(std::move(t.rep));
    }
    return gb;
}

NormalFormResult normal_form(const Poly& p, const GroebnerBasis& gb) {
    if (p.nvars() != gb.nvars) throw ValidationError("normal_form: variable count mismatch");
    NormalFormResult res{Poly(p.nvars()), std::vector<Poly>(gb.generators.size(), Poly(p.nvars()))};
    Poly work = p;
    while (!work.is_zero()) {
        const Monomial lm = work.leading_monomial(gb.order);
        const Rational lc = work.coefficient_of(lm);
        bool reduced = false;
        for (std::size_t i = 0; i < gb.generators.size(); ++i) {
            const Monomial& lmb = gb.generators[i].leading_monomial(gb.order);
            if (!lmb.divides(lm)) continue;
            Monomial q = lm.divide_by(lmb);
            Rational c = lc / gb.generators[i].coefficient_of(lmb);
            work -= gb.generators[i].times_monomial(q, c);
            res.cofactors[i] += Poly::term(q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            res.remainder += Poly::term(lm, lc);
            work -= Poly::term(lm, lc);
        }
    }
    return res;
}

std::vector<Monomial> quotient_basis(const GroebnerBasis& gb) {
    const std::size_t n = gb.nvars;
    std::vector<Monomial> leading;
    for (const Poly& g : gb.generators) leading.push_back(g.leading_monomial(gb.order));

    // Finite staircase iff some pure power of every variable is a leading term.
    std::vector<unsigned> bound(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        bool found = false;
        for (const Monomial& m : leading) {
            bool pure = true;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && m.exp(j) > 0) { pure = false; break; }
            if (pure) {
                found = true;
                bound[i] = found && bound[i] > 0 ? std::min(bound[i], m.exp(i)) : m.exp(i);
            }
        }
        if (!found)
            throw ValidationError("quotient_basis: ideal is not zero-dimensional (critical locus not isolated)");
    }

    std::vector<Monomial> result;
    std::vector<unsigned> exps(n, 0);
    // Enumerate the box below the pure-power bounds and filter by the staircase.
    auto divisible = [&](const Monomial& m) {
        for (const Monomial& lt : leading)
            if (lt.divides(m)) return true;
        return false;
    };
    for (;;) {
        Monomial m{std::vector<unsigned>(exps)};
        if (!divisible(m)) result.push_back(std::move(m));
        std::size_t i = 0;
        while (i < n) {
            if (++exps[i] < bound[i]) break;
            exps[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    MonomialOrder ord = MonomialOrder::degrevlex();
    std::sort(result.begin(), result.end(),
              [&](const Monomial& a, const Monomial& b) { return ord.greater(b, a); });
    return result;
}

std::vector<Rational> quotient_coordinates(const Poly& p, const GroebnerBasis& gb,
                                           const std::vector<Monomial>& basis) {
    Poly nf = normal_form(p, gb).remainder;
    std::vector<Rational> coords(basis.size(), Rational(0));
    for (std::size_t i = 0; i < basis.size(); ++i) coords[i] = nf.coefficient_of(basis[i]);
    return coords;
}

Matrix<Rational> multiplication_matrix(const Poly& p, const GroebnerBasis& gb,
                                       const std::vector<Monomial>& basis) {
    Matrix<Rational> m(basis.size(), basis.size(), Rational(0));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Poly pj = p * Poly::term(basis[j], Rational(1));
        std::vector<Rational> col = quotient_coordinates(pj, gb, basis);
        for (std::size_t i = 0; i < basis.size(); ++i) m.at(i, j) = col[i];
    }
    return m;
}

Eliminant minimal_polynomial(const GroebnerBasis& gb, std::size_t var) {
    if (var >= gb.nvars) throw ValidationError("minimal_polynomial: variable index out of range");
    std::vector<Monomial> basis = quotient_basis(gb);
    const std::size_t mu = basis.size();
    const std::size_t n = gb.nvars;

    // Krylov sequence: powers of z_var with their normal forms and
    // gb-cofactor corrections, z^k == nf_k + sum_i cof_k[i]*gb[i].
    std::vector<std::vector<Rational>> coords;            // quotient coordinates of z^k
    std::vector<std::vector<Poly>> gb_cofs;               // gb cofactors of z^k
    std::vector<Poly> nfs;

    Poly zvar = Poly::variable(n, var);
    Poly cur = Poly::constant(n, 1);
    std::vector<Poly> cur_cof(gb.generators.size(), Poly(n));  // ideal part of cur

    // Incremental Gaussian elimination to detect the first dependence.
    // rows: reduced echelon rows with bookkeeping of the combination.
    std::vector<std::vector<Rational>> rows;
    std::vector<std::size_t> row_pivot;
    std::vector<std::vector<Rational>> row_combo;   // combination over the power list

    for (std::size_t k = 0;; ++k) {
        if (k > mu) throw ValidationError("minimal_polynomial: no dependence found (internal error)");
        NormalFormResult nf = normal_form(cur, gb);
        std::vector<Poly> total_cof = cur_cof;
        for (std::size_t i = 0; i < total_cof.size(); ++i) total_cof[i] += nf.cofactors[i];

        std::vector<Rational> v(mu, Rational(0));
        for (std::size_t i = 0; i < mu; ++i) v[i] = nf.remainder.coefficient_of(basis[i]);

        // Reduce v against current echelon rows, tracking the combination.
        std::vector<Rational> combo(k + 1, Rational(0));
        combo[k] = Rational(1);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Rational f = v[row_pivot[r]];
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < mu; ++c) v[c] -= f * rows[r][c];
            for (std::size_t c = 0; c < row_combo[r].size(); ++c) combo[c] -= f * row_combo[r][c];
        }
        std::size_t piv = mu;
        for (std::size_t c = 0; c < mu; ++c)
            if (!v[c].is_zero()) { piv = c; break; }

        coords.push_back(std::move(v));
        gb_cofs.push_back(std::move(total_cof));
        nfs.push_back(nf.remainder);

        if (piv == mu) {
            // z^k + sum_{m<k} combo[m] (before normalization) ... combo holds
            // the dependence with coefficient 1 on z^k.
            Eliminant e{Poly(n), {}};
            std::vector<Poly> chi_gb_cof(gb.generators.size(), Poly(n));
            for (std::size_t m = 0; m <= k; ++m) {
                if (combo[m].is_zero()) continue;
                e.chi += Poly::term(Monomial::variable(n, var, static_cast<unsigned>(m)), combo[m]);
                for (std::size_t i = 0; i < chi_gb_cof.size(); ++i)
                    chi_gb_cof[i] += gb_cofs[m][i].scaled(combo[m]);
            }
            // Map gb cofactors to input cofactors through the basis representations.
            e.input_cofactors.assign(gb.input_count, Poly(n));
            for (std::size_t i = 0; i < gb.generators.size(); ++i)
                for (std::size_t j = 0; j < gb.input_count; ++j)
                    e.input_cofactors[j] += chi_gb_cof[i] * gb.cofactors[i][j];
            return e;
        }

        // Normalize the new row and prepend its data.
        const std::vector<Rational>& vref = coords.back();
        Rational inv = vref[piv].inverse();
        std::vector<Rational> row(mu);
        for (std::size_t c = 0; c < mu; ++c) row[c] = vref[c] * inv;
        std::vector<Rational> rcombo(combo.size());
        for (std::size_t c = 0; c < combo.size(); ++c) rcombo[c] = combo[c] * inv;
        rows.push_back(std::move(row));
        row_pivot.push_back(piv);
        row_combo.push_back(std::move(rcombo));

        // next power: cur ← z * (nf + ideal part), tracked.
        for (std::size_t i = 0; i < cur_cof.size(); ++i) cur_cof[i] = zvar * gb_cofs[k][i];
        cur = zvar * nfs[k];
    }
}

} // namespace mfcy
