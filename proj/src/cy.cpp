#include "mfcy/cy.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "mfcy/error.hpp"
#include "mfcy/groebner.hpp"
#include "mfcy/residue.hpp"

namespace mfcy {

void validate_volume_form(const Superpotential& w, const VolumeForm& omega) {
    if (omega.omega.is_zero()) throw ValidationError("volume form coefficient is zero");
    if (omega.omega.nvars() != w.nvars()) throw ValidationError("volume form in the wrong ring");
    const CriticalLocus& cl = w.locus();
    Matrix<Rational> m = multiplication_matrix(omega.omega, cl.gb, cl.milnor_basis);
    if (rational_rank(m) != cl.milnor_number)
        throw ValidationError("volume form is not invertible in the Milnor algebra");
}

// ---------------------------------------------------------------------------
// Combinatorial enumeration

std::vector<std::vector<unsigned>> CombinatorialFrame::compositions(unsigned total, std::size_t parts) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(parts, 0);
    // lexicographic enumeration by recursion on the first slot
    struct Rec {
        std::vector<std::vector<unsigned>>& out;
        std::vector<unsigned>& cur;
        std::size_t parts;
        void go(std::size_t pos, unsigned rest) {
            if (pos + 1 == parts) {
                cur[pos] = rest;
                out.push_back(cur);
                return;
            }
            for (unsigned v = 0; v <= rest; ++v) {
                cur[pos] = v;
                go(pos + 1, rest - v);
            }
        }
    };
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    Rec{out, cur, parts}.go(0, total);
    return out;
}

std::vector<std::vector<unsigned>> CombinatorialFrame::r_vectors(std::size_t i) const {
    std::vector<std::vector<unsigned>> out;
    for (auto& r : compositions(static_cast<unsigned>(l), n))
        if (r[i] >= 1) out.push_back(r);
    return out;
}

std::vector<std::vector<std::size_t>> CombinatorialFrame::lambda_tuples(const std::vector<unsigned>& r) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<unsigned> counts = r;
    std::vector<std::size_t> cur;
    unsigned l = 0;
    for (unsigned c : r) l += c;
    struct Rec {
        std::vector<std::vector<std::size_t>>& out;
        std::vector<unsigned>& counts;
        std::vector<std::size_t>& cur;
        unsigned l;
        void go() {
            if (cur.size() == l) {
                out.push_back(cur);
                return;
            }
            for (std::size_t v = 0; v < counts.size(); ++v) {
                if (counts[v] == 0) continue;
                --counts[v];
                cur.push_back(v);
                go();
                cur.pop_back();
                ++counts[v];
            }
        }
    };
    Rec{out, counts, cur, l}.go();
    return out;
}

std::vector<std::pair<std::vector<std::size_t>, int>>
CombinatorialFrame::permutations_excluding(std::size_t i) const {
    std::vector<std::size_t> base;
    for (std::size_t v = 0; v < n; ++v)
        if (v != i) base.push_back(v);
    std::vector<std::pair<std::vector<std::size_t>, int>> out;
    std::sort(base.begin(), base.end());
    std::vector<std::size_t> p = base;
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = a + 1; b < p.size(); ++b)
                if (p[a] > p[b]) ++inversions;
        out.push_back({p, inversions % 2 == 0 ? 1 : -1});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::uint64_t CombinatorialFrame::term_estimate(std::size_t n, std::size_t l) {
    // #k-compositions * sum_i #{color tuples using i} * (n-1)!
    auto binom = [](std::uint64_t a, std::uint64_t b) {
        if (b > a) return std::uint64_t{0};
        std::uint64_t r = 1;
        for (std::uint64_t i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    auto ipow = [](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e--) r *= b;
        return r;
    };
    std::uint64_t kcomps = binom(n + l - 2, l - 1);
    std::uint64_t colored = static_cast<std::uint64_t>(n) * (ipow(n, l) - ipow(n - 1, l));
    std::uint64_t perms = 1;   // (n-1)!
    for (std::uint64_t v = 2; n >= 2 && v <= n - 1; ++v) perms *= v;
    return kcomps * colored * perms;
}

namespace {

int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

// Sign of a tuple listing of a set of distinct indices, relative to ascending order.
int tuple_sign(const std::vector<std::size_t>& t) {
    int inv = 0;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b)
            if (t[a] > t[b]) ++inv;
    return sign_pow(inv);
}

Rational residue_for(const Superpotential& w, const Poly& numerator,
                     const std::vector<unsigned>& powers, const ThetaOptions& opts) {
    ResidueQuery q;
    q.numerator = numerator;
    const std::size_t n = w.nvars();
    for (std::size_t v = 0; v < n; ++v)
        q.denominators.push_back({w.f().partial_derivative(v), powers[v]});
    if (opts.mode == ThetaMode::at_point) {
        if (!opts.point) throw ValidationError("theta at a point needs the point");
        q.point = opts.point;
        return residue_local(q);
    }
    return residue_total(q);
}

const Superpotential& chain_superpotential(const Chain& c) {
    return *c.phi(1).source()->superpotential();
}

// str(A*B) without forming the full product.
Poly supertrace_of_product(const BlockMatrix& a, const BlockMatrix& b) {
    const std::size_t nv = a.nvars();
    Poly t(nv);
    if ((parity_bit(a.parity()) + parity_bit(b.parity())) % 2 == 1) return t;   // odd product
    if (a.rows() != b.cols()) throw ValidationError("supertrace of non-endomorphism product");
    const std::size_t k = a.rows(), m = a.cols();
    if (a.parity() == Parity::even) {
        // (AB)_11 = A11 B11, (AB)_22 = A22 B22
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (!a.first().at(i, j).is_zero() && !b.first().at(j, i).is_zero())
                    t += a.first().at(i, j) * b.first().at(j, i);
                if (!a.second().at(i, j).is_zero() && !b.second().at(j, i).is_zero())
                    t -= a.second().at(i, j) * b.second().at(j, i);
            }
    } else {
        // (AB)_11 = A12 B21, (AB)_22 = A21 B12
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (!a.first().at(i, j).is_zero() && !b.second().at(j, i).is_zero())
                    t += a.first().at(i, j) * b.second().at(j, i);
                if (!a.second().at(i, j).is_zero() && !b.first().at(j, i).is_zero())
                    t -= a.second().at(i, j) * b.first().at(j, i);
            }
    }
    return t;
}

// Memoized products of derivative blocks of one object, keyed by index tuple.
class DerivativeProducts {
public:
    DerivativeProducts(const FactorizationPtr& d, std::size_t nvars) {
        for (std::size_t v = 0; v < nvars; ++v) parts_.push_back(d->d_partial(v));
    }

    const BlockMatrix& part(std::size_t v) const { return parts_[v]; }

    // Product part(t0)*part(t1)*...*part(tm), m >= 0 entries.
    const BlockMatrix& product(const std::vector<std::size_t>& tuple) {
        auto it = memo_.find(tuple);
        if (it != memo_.end()) return it->second;
        BlockMatrix m = parts_[tuple[0]];
        for (std::size_t a = 1; a < tuple.size(); ++a) m = m * parts_[tuple[a]];
        return memo_.emplace(tuple, std::move(m)).first->second;
    }

private:
    std::vector<BlockMatrix> parts_;
    std::map<std::vector<std::size_t>, BlockMatrix> memo_;
};

// Per-slot dressed factors Phi_s * (derivative product of its source object).
class DressedSlot {
public:
    DressedSlot(const Morphism& phi, std::size_t nvars)
        : phi_(phi), derivatives_(phi.source(), nvars) {}

    const BlockMatrix& factor(const std::vector<std::size_t>& tuple) {
        auto it = memo_.find(tuple);
        if (it != memo_.end()) return it->second;
        BlockMatrix m = phi_.block() * derivatives_.product(tuple);
        return memo_.emplace(tuple, std::move(m)).first->second;
    }

private:
    Morphism phi_;
    DerivativeProducts derivatives_;
    std::map<std::vector<std::size_t>, BlockMatrix> memo_;
};

struct NumeratorBuckets {
    // keyed by (excluded index i, r-vector); accumulated supertrace numerators
    std::map<std::pair<std::size_t, std::vector<unsigned>>, Poly> buckets;
    std::uint64_t terms = 0;

    void merge(NumeratorBuckets&& o) {
        for (auto& [key, poly] : o.buckets) {
            auto it = buckets.find(key);
            if (it == buckets.end())
                buckets.emplace(key, std::move(poly));
            else
                it->second += poly;
        }
        terms += o.terms;
    }
};

// Dressed-factor memo bank, one DressedSlot per chain slot (index 0 = slot l).
// Shared across compositions within one worker; not thread-safe.
std::vector<DressedSlot> make_slots(const Chain& c, std::size_t n) {
    std::vector<DressedSlot> slots;
    for (std::size_t s = c.length(); s >= 1; --s) slots.emplace_back(c.phi(s), n);
    return slots;
}

// Enumerates, for one composition (k_1..k_l) of n-1, all derivative-slot
// assignments with shared prefix products, accumulating supertraces by
// (i, r) bucket.
class CompositionEnumerator {
public:
    CompositionEnumerator(const Chain& c, const std::vector<unsigned>& k, std::size_t n,
                          std::vector<DressedSlot>& slots)
        : chain_(c), k_(k), n_(n), l_(c.length()), slots_(slots) {
        int eps_exp = 0;
        for (std::size_t s = 1; s <= l_; ++s) eps_exp += static_cast<int>(k_[s - 1]) * c.eps(s);
        eps_sign_ = sign_pow(eps_exp);
    }

    NumeratorBuckets run() {
        used_.assign(n_, false);
        itup_.clear();
        jflat_.clear();
        descend(0, nullptr);
        return std::move(out_);
    }

private:
    // depth d handles slot s = l - d (slots_[d]); prefix = product over slots above.
    void descend(std::size_t depth, const BlockMatrix* prefix) {
        const std::size_t slot = l_ - depth;              // 1-based slot index
        const unsigned ks = k_[slot - 1];
        std::vector<std::size_t> tuple(1 + ks);
        choose_tuple(depth, slot, prefix, tuple, 0);
    }

    void choose_tuple(std::size_t depth, std::size_t slot, const BlockMatrix* prefix,
                      std::vector<std::size_t>& tuple, std::size_t filled) {
        if (filled == tuple.size()) {
            emit(depth, prefix, tuple);
            return;
        }
        if (filled == 0) {
            // the i^{(slot)} insertion: any variable
            for (std::size_t v = 0; v < n_; ++v) {
                tuple[0] = v;
                itup_.push_back(v);
                choose_tuple(depth, slot, prefix, tuple, 1);
                itup_.pop_back();
            }
        } else {
            // ordered j-insertions: distinct across the whole chain
            for (std::size_t v = 0; v < n_; ++v) {
                if (used_[v]) continue;
                used_[v] = true;
                tuple[filled] = v;
                jflat_.push_back(v);
                choose_tuple(depth, slot, prefix, tuple, filled + 1);
                jflat_.pop_back();
                used_[v] = false;
            }
        }
    }

    void emit(std::size_t depth, const BlockMatrix* prefix, const std::vector<std::size_t>& tuple) {
        DressedSlot& ds = slots_[depth];
        if (depth + 1 == l_) {
            // leaf: the one unused j-index is the residue slot i
            std::size_t excluded = n_;
            for (std::size_t v = 0; v < n_; ++v)
                if (!used_[v]) { excluded = v; break; }
            std::vector<unsigned> r(n_, 0);
            for (std::size_t v : itup_) ++r[v];   // includes this slot's i-insertion
            if (r[excluded] == 0) return;         // residue slot must be hit
            Poly str = prefix ? supertrace_of_product(*prefix, ds.factor(tuple))
                              : ds.factor(tuple).supertrace();
            if (str.is_zero()) { ++out_.terms; return; }
            int sgn = tuple_sign_with(tuple) * eps_sign_;
            auto key = std::make_pair(excluded, std::move(r));
            auto it = out_.buckets.find(key);
            if (it == out_.buckets.end()) it = out_.buckets.emplace(key, Poly(str.nvars())).first;
            if (sgn > 0)
                it->second += str;
            else
                it->second -= str;
            ++out_.terms;
            return;
        }
        const BlockMatrix& f = ds.factor(tuple);
        if (prefix) {
            BlockMatrix next = *prefix * f;
            descend(depth + 1, &next);
        } else {
            descend(depth + 1, &f);
        }
    }

    // Sign of the flat j-tuple (jflat_ plus the leaf tuple's j part is already
    // included there) relative to ascending order.
    int tuple_sign_with(const std::vector<std::size_t>&) const { return tuple_sign(jflat_); }

    const Chain& chain_;
    std::vector<unsigned> k_;
    std::size_t n_, l_;
    std::vector<DressedSlot>& slots_;
    int eps_sign_ = 1;
    std::vector<bool> used_;
    std::vector<std::size_t> itup_;    // i^{(s)} choices so far, slot l first
    std::vector<std::size_t> jflat_;   // flat j choices in display order
    NumeratorBuckets out_;
};

// r[i-th slot] has exponent r_i, the others r_v + 1.
std::vector<unsigned> denominator_powers(const std::vector<unsigned>& r, std::size_t i) {
    std::vector<unsigned> p = r;
    for (std::size_t v = 0; v < p.size(); ++v)
        if (v != i) p[v] += 1;
    return p;
}

} // namespace

ThetaResult theta(const Chain& c, const VolumeForm& omega, const ThetaOptions& opts) {
    const Superpotential& w = chain_superpotential(c);
    validate_volume_form(w, omega);
    const std::size_t n = w.nvars();
    const std::size_t l = c.length();

    // Structural parity: every supertrace argument carries l + (n-1)
    // odd derivative factors next to the chain entries.
    int total_parity = 0;
    for (std::size_t s = 1; s <= l; ++s) total_parity += parity_bit(c.phi(s).parity());
    if ((total_parity + static_cast<int>(n) + static_cast<int>(l) - 1) % 2 != 0)
        return {Rational(0), 0};

    std::uint64_t estimate = CombinatorialFrame::term_estimate(n, l);
    if (estimate > opts.budget)
        throw BudgetError("theta: term estimate " + std::to_string(estimate) +
                          " exceeds budget " + std::to_string(opts.budget));

    auto kcomps = CombinatorialFrame::compositions(static_cast<unsigned>(n - 1), l);

    std::vector<NumeratorBuckets> partial(kcomps.size());
    unsigned threads = std::max(1u, opts.threads);
    if (threads == 1 || kcomps.size() <= 1) {
        std::vector<DressedSlot> slots = make_slots(c, n);
        for (std::size_t t = 0; t < kcomps.size(); ++t)
            partial[t] = CompositionEnumerator(c, kcomps[t], n, slots).run();
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            std::vector<DressedSlot> slots = make_slots(c, n);
            for (;;) {
                std::size_t t = next.fetch_add(1);
                if (t >= kcomps.size()) break;
                partial[t] = CompositionEnumerator(c, kcomps[t], n, slots).run();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    NumeratorBuckets all;
    for (auto& p : partial) all.merge(std::move(p));   // fixed merge order

    Rational value(0);
    for (const auto& [key, numerator] : all.buckets) {
        if (numerator.is_zero()) continue;
        const auto& [i, r] = key;
        Rational weight(1);
        for (unsigned rv : r) weight *= Rational::factorial(rv);
        int isign = sign_pow(static_cast<int>(i) + 1);   // (-1)^i with 1-based i
        Rational res = residue_for(w, numerator * omega.omega, denominator_powers(r, i), opts);
        value += res * weight * Rational(isign);
    }
    value = value / Rational::factorial(static_cast<unsigned>(n + l - 1));
    return {value, all.terms};
}

ThetaResult theta(const ChainSum& s, const VolumeForm& omega, const ThetaOptions& opts) {
    ThetaResult out;
    for (const auto& [coef, chain] : s.terms()) {
        ThetaResult r = theta(chain, omega, opts);
        out.value += coef * r.value;
        out.term_count += r.term_count;
    }
    return out;
}

Rational theta_kl(const Morphism& phi, const VolumeForm& omega, const ThetaOptions& opts) {
    if (!(*phi.source() == *phi.target())) throw ValidationError("theta_kl expects an endomorphism");
    const Superpotential& w = *phi.source()->superpotential();
    validate_volume_form(w, omega);
    const std::size_t n = w.nvars();

    DerivativeProducts dp(phi.source(), n);
    std::vector<std::size_t> perm(n);
    for (std::size_t v = 0; v < n; ++v) perm[v] = v;
    Poly numerator(n);
    do {
        Poly str = supertrace_of_product(dp.product(perm), phi.block());
        if (str.is_zero()) continue;
        if (tuple_sign(perm) > 0)
            numerator += str;
        else
            numerator -= str;
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<unsigned> powers(n, 1);
    Rational res = residue_for(w, numerator * omega.omega, powers, opts);
    return res / Rational::factorial(static_cast<unsigned>(n));
}

Rational theta_tilde(const Morphism& psi_out, const Morphism& psi_in, const VolumeForm& omega,
                     const ThetaOptions& opts) {
    if (!(*psi_in.target() == *psi_out.source()) || !(*psi_out.target() == *psi_in.source()))
        throw ValidationError("theta_tilde expects a composable pair D'->D''->D'");
    const Superpotential& w = *psi_in.source()->superpotential();
    validate_volume_form(w, omega);
    const std::size_t n = w.nvars();

    DerivativeProducts d_out(psi_out.source(), n);   // derivatives of D''
    DerivativeProducts d_in(psi_in.source(), n);     // derivatives of D'
    const int sp_in = parity_bit(psi_in.parity());

    Rational value(0);
    for (std::size_t j = 0; j < n; ++j) {
        Poly numerator(n);
        std::vector<std::size_t> perm(n);
        for (std::size_t v = 0; v < n; ++v) perm[v] = v;
        do {
            int sgn = tuple_sign(perm);
            for (unsigned k = 1; k <= n; ++k) {
                int ksign = sign_pow(static_cast<int>(k - 1) * (sp_in + 1));
                // str(Psi'' (dD'')^k Psi' d_j D' (dD')^{n-k})
                {
                    BlockMatrix m = psi_out.block();
                    for (unsigned a = 0; a < k; ++a) m = m * d_out.part(perm[a]);
                    m = m * psi_in.block();
                    m = m * d_in.part(j);
                    BlockMatrix tail = m;
                    for (unsigned a = k; a < n; ++a) tail = tail * d_in.part(perm[a]);
                    Poly str = tail.supertrace();
                    if (!str.is_zero()) {
                        Rational coef = Rational(sgn * ksign);
                        numerator += str.scaled(coef);
                    }
                }
                // (-1)^{k-1} str(Psi'' d_j D'' (dD'')^{k-1} Psi' (dD')^{n-k+1})
                {
                    BlockMatrix m = psi_out.block() * d_out.part(j);
                    for (unsigned a = 0; a + 1 < k; ++a) m = m * d_out.part(perm[a]);
                    m = m * psi_in.block();
                    for (unsigned a = k - 1; a < n; ++a) m = m * d_in.part(perm[a]);
                    Poly str = m.supertrace();
                    if (!str.is_zero()) {
                        Rational coef = Rational(sgn * ksign * sign_pow(static_cast<int>(k - 1)));
                        numerator += str.scaled(coef);
                    }
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (numerator.is_zero()) continue;
        std::vector<unsigned> powers(n, 1);
        powers[j] = 2;
        value += residue_for(w, numerator * omega.omega, powers, opts);
    }
    Rational pref = Rational(sign_pow(static_cast<int>(n))) / Rational::factorial(static_cast<unsigned>(n + 1));
    return value * pref;
}

Rational theta_one_variable_reference(const Chain& c, const VolumeForm& omega, const ThetaOptions& opts) {
    const Superpotential& w = chain_superpotential(c);
    if (w.nvars() != 1) throw ValidationError("one-variable reference needs one variable");
    validate_volume_form(w, omega);
    const std::size_t l = c.length();
    BlockMatrix m = c.phi(l).block() * c.phi(l).source()->d_partial(0);
    for (std::size_t s = l; s-- > 1;)
        m = m * (c.phi(s).block() * c.phi(s).source()->d_partial(0));
    Poly numerator = m.supertrace();
    if (numerator.is_zero()) return Rational(0);
    std::vector<unsigned> powers{static_cast<unsigned>(l)};
    Rational res = residue_for(w, numerator * omega.omega, powers, opts);
    return -res;
}

Rational pairing(const Morphism& a_out, const Morphism& a_in, const VolumeForm& omega,
                 const ThetaOptions& opts) {
    if (!delta(a_out).block().is_zero())
        throw ValidationError("pairing: left argument is not a delta-cocycle");
    if (!delta(a_in).block().is_zero())
        throw ValidationError("pairing: right argument is not a delta-cocycle");
    Chain c({compose(a_out, a_in)});
    return theta(c, omega, opts).value;
}

std::vector<std::vector<Rational>> gram_matrix(const std::vector<Morphism>& basis_out,
                                               const std::vector<Morphism>& basis_in,
                                               const VolumeForm& omega, const ThetaOptions& opts) {
    if (basis_out.size() != basis_in.size())
        throw ValidationError("gram_matrix: bases of different sizes");
    std::vector<std::vector<Rational>> g(basis_out.size(),
                                         std::vector<Rational>(basis_in.size(), Rational(0)));
    for (std::size_t i = 0; i < basis_out.size(); ++i)
        for (std::size_t j = 0; j < basis_in.size(); ++j)
            g[i][j] = pairing(basis_out[i], basis_in[j], omega, opts);
    return g;
}

CoboundaryCertificate is_coboundary(const Morphism& phi, unsigned degree_bound) {
    if (!delta(phi).block().is_zero()) throw ValidationError("is_coboundary expects a cocycle");
    const std::size_t n = phi.source()->nvars();
    const std::size_t rows = phi.target()->size(), cols = phi.source()->size();
    const Parity psi_parity = flip(phi.parity());

    // Monomials of total degree <= bound, fixed order.
    std::vector<Monomial> mons;
    {
        std::vector<unsigned> e(n, 0);
        for (;;) {
            Monomial m{std::vector<unsigned>(e)};
            if (m.degree() <= degree_bound) mons.push_back(m);
            std::size_t i = 0;
            while (i < n) {
                if (++e[i] <= degree_bound) break;
                e[i] = 0;
                ++i;
            }
            if (i == n) break;
        }
    }

    const std::size_t per_block = rows * cols * mons.size();
    const std::size_t unknowns = 2 * per_block;

    auto unit_psi = [&](std::size_t idx) {
        std::size_t block = idx / per_block, rest = idx % per_block;
        std::size_t r = rest / (cols * mons.size());
        rest %= cols * mons.size();
        std::size_t cidx = rest / mons.size();
        std::size_t midx = rest % mons.size();
        PolyMatrix a = poly_zero_matrix(rows, cols, n), b = poly_zero_matrix(rows, cols, n);
        Poly entry = Poly::term(mons[midx], Rational(1));
        (block == 0 ? a : b).at(r, cidx) = entry;
        BlockMatrix m = psi_parity == Parity::even ? BlockMatrix::even(a, b) : BlockMatrix::odd(a, b);
        return Morphism(phi.source(), phi.target(), m);
    };

    // Collect the constraint monomial set from delta of all units and phi.
    std::map<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, Monomial>>, std::size_t> row_index;
    auto row_of = [&](std::size_t block, std::size_t r, std::size_t cc, const Monomial& m) {
        auto key = std::make_pair(std::make_pair(block, r), std::make_pair(cc, m));
        auto it = row_index.find(key);
        if (it != row_index.end()) return it->second;
        std::size_t idx = row_index.size();
        row_index.emplace(key, idx);
        return idx;
    };

    std::vector<std::map<std::size_t, Rational>> cols_sparse(unknowns);
    auto scan = [&](const BlockMatrix& m, auto&& sink) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t cc = 0; cc < m.cols(); ++cc) {
                for (const auto& [mon, coef] : m.first().at(r, cc).terms()) sink(0, r, cc, mon, coef);
                for (const auto& [mon, coef] : m.second().at(r, cc).terms()) sink(1, r, cc, mon, coef);
            }
    };
    for (std::size_t u = 0; u < unknowns; ++u) {
        Morphism psi = unit_psi(u);
        BlockMatrix d = delta(psi).block();
        scan(d, [&](std::size_t block, std::size_t r, std::size_t cc, const Monomial& mon, const Rational& coef) {
            cols_sparse[u][row_of(block, r, cc, mon)] = coef;
        });
    }
    std::map<std::size_t, Rational> rhs_sparse;
    scan(phi.block(), [&](std::size_t block, std::size_t r, std::size_t cc, const Monomial& mon, const Rational& coef) {
        rhs_sparse[row_of(block, r, cc, mon)] = coef;
    });

    const std::size_t nrows = row_index.size();
    Matrix<Rational> a(nrows, unknowns, Rational(0));
    std::vector<Rational> b(nrows, Rational(0));
    for (std::size_t u = 0; u < unknowns; ++u)
        for (const auto& [r, coef] : cols_sparse[u]) a.at(r, u) = coef;
    for (const auto& [r, coef] : rhs_sparse) b[r] = coef;

    auto sol = rational_solve(a, b);
    if (!sol) return {false, std::nullopt};

    PolyMatrix wa = poly_zero_matrix(rows, cols, n), wb = poly_zero_matrix(rows, cols, n);
    for (std::size_t u = 0; u < unknowns; ++u) {
        if ((*sol)[u].is_zero()) continue;
        std::size_t block = u / per_block, rest = u % per_block;
        std::size_t r = rest / (cols * mons.size());
        rest %= cols * mons.size();
        std::size_t cidx = rest / mons.size();
        std::size_t midx = rest % mons.size();
        (block == 0 ? wa : wb).at(r, cidx) += Poly::term(mons[midx], (*sol)[u]);
    }
    BlockMatrix wm = psi_parity == Parity::even ? BlockMatrix::even(wa, wb) : BlockMatrix::odd(wa, wb);
    return {true, Morphism(phi.source(), phi.target(), wm)};
}

} // namespace mfcy
