#include "mfcy/hochschild.hpp"

#include <algorithm>

#include "mfcy/error.hpp"

namespace mfcy {

Chain::Chain(std::vector<Morphism> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ValidationError("chain must have length >= 1");
    const std::size_t l = entries_.size();
    for (std::size_t i = 1; i <= l; ++i) {
        const Morphism& cur = phi(i);
        const Morphism& next = i == l ? phi(1) : phi(i + 1);
        // target(Phi_i) == source(Phi_{i+1}), cyclically.
        if (!(*cur.target() == *next.source()))
            throw ValidationError("chain does not close up cyclically at slot " + std::to_string(i));
    }
}

int Chain::eps(std::size_t i) const {
    int e = 0;
    for (std::size_t j = i; j <= entries_.size(); ++j) e += parity_bit(phi(j).parity()) + 1;
    return e % 2;
}

int Chain::compare(const Chain& a, const Chain& b) {
    if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
    for (std::size_t i = 0; i < a.length(); ++i) {
        int c = Morphism::compare(a.entries_[i], b.entries_[i]);
        if (c != 0) return c;
    }
    return 0;
}

void ChainSum::add(const Rational& c, const Chain& chain) {
    if (c.is_zero()) return;
    for (const Morphism& m : chain.entries())
        if (m.block().is_zero()) return;   // a tensor with a zero factor is zero
    auto it = std::lower_bound(terms_.begin(), terms_.end(), chain,
                               [](const auto& t, const Chain& x) { return Chain::compare(t.second, x) < 0; });
    if (it != terms_.end() && Chain::compare(it->second, chain) == 0) {
        it->first += c;
        if (it->first.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {c, chain});
    }
}

void ChainSum::add(const ChainSum& o) {
    for (const auto& [c, chain] : o.terms_) add(c, chain);
}

ChainSum ChainSum::scaled(const Rational& c) const {
    ChainSum r;
    if (c.is_zero()) return r;
    for (const auto& [c0, chain] : terms_) r.terms_.push_back({c0 * c, chain});
    return r;
}

namespace {

// Multilinear zero test for sums of morphism tuples. The head entries of
// structurally equal tails are summed as morphisms; independent heads are
// separated by sparse elimination and the attached tail combinations are
// tested recursively.
using MorphismTuple = std::vector<Morphism>;
using TupleTerm = std::pair<Rational, MorphismTuple>;
using HeadCoord = std::tuple<int, std::size_t, std::size_t, Monomial>;
using HeadVector = std::map<HeadCoord, Rational>;

HeadVector head_vector(const BlockMatrix& m, const Rational& scale) {
    HeadVector v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            for (const auto& [mon, c] : m.first().at(i, j).terms()) {
                Rational cc = c * scale;
                if (!cc.is_zero()) v[{0, i, j, mon}] = cc;
            }
            for (const auto& [mon, c] : m.second().at(i, j).terms()) {
                Rational cc = c * scale;
                if (!cc.is_zero()) v[{1, i, j, mon}] = cc;
            }
        }
    return v;
}

int compare_tuples(const MorphismTuple& a, const MorphismTuple& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = Morphism::compare(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool tuples_zero(std::vector<TupleTerm> terms);

bool length_one_zero(const std::vector<TupleTerm>& terms) {
    // bucket by (source, target, parity) and sum the blocks
    std::vector<Morphism> sums;
    for (const auto& [c, tup] : terms) {
        const Morphism& m = tup[0];
        bool merged = false;
        for (Morphism& s : sums) {
            if (s.parity() == m.parity() && *s.source() == *m.source() && *s.target() == *m.target()) {
                s = s + m.scaled(c);
                merged = true;
                break;
            }
        }
        if (!merged) sums.push_back(m.scaled(c));
    }
    for (const Morphism& s : sums)
        if (!s.block().is_zero()) return false;
    return true;
}

bool tuples_zero(std::vector<TupleTerm> terms) {
    // drop zero coefficients and tuples with a zero entry
    std::vector<TupleTerm> live;
    for (auto& t : terms) {
        if (t.first.is_zero()) continue;
        bool zero_entry = false;
        for (const Morphism& m : t.second)
            if (m.block().is_zero()) { zero_entry = true; break; }
        if (!zero_entry) live.push_back(std::move(t));
    }
    if (live.empty()) return true;

    // components of different length are independent
    std::map<std::size_t, std::vector<TupleTerm>> by_len;
    for (auto& t : live) by_len[t.second.size()].push_back(std::move(t));
    for (auto& [len, group] : by_len) {
        if (len == 1) {
            if (!length_one_zero(group)) return false;
            continue;
        }
        // bucket by (head parity, structural tail); sum heads
        struct Bucket {
            MorphismTuple tail;
            Morphism head;
        };
        std::vector<Bucket> buckets;
        for (const auto& [c, tup] : group) {
            MorphismTuple tail(tup.begin() + 1, tup.end());
            bool merged = false;
            for (Bucket& b : buckets) {
                if (b.head.parity() == tup[0].parity() && compare_tuples(b.tail, tail) == 0 &&
                    *b.head.source() == *tup[0].source() && *b.head.target() == *tup[0].target()) {
                    b.head = b.head + tup[0].scaled(c);
                    merged = true;
                    break;
                }
            }
            if (!merged) buckets.push_back(Bucket{std::move(tail), tup[0].scaled(c)});
        }

        // eliminate heads, accumulating tail combinations on the echelon rows
        struct Row {
            HeadCoord pivot;
            Rational pivot_value;
            HeadVector head;
            std::vector<TupleTerm> tails;
        };
        std::vector<Row> rows;
        for (Bucket& b : buckets) {
            HeadVector h = head_vector(b.head.block(), Rational(1));
            MorphismTuple tail = std::move(b.tail);
            for (Row& r : rows) {
                auto it = h.find(r.pivot);
                if (it == h.end() || it->second.is_zero()) continue;
                Rational lambda = it->second / r.pivot_value;
                for (const auto& [coord, val] : r.head) {
                    auto jt = h.find(coord);
                    if (jt == h.end()) {
                        Rational nv = -(lambda * val);
                        if (!nv.is_zero()) h.emplace(coord, nv);
                    } else {
                        jt->second -= lambda * val;
                        if (jt->second.is_zero()) h.erase(jt);
                    }
                }
                r.tails.push_back({lambda, tail});
            }
            if (!h.empty()) {
                HeadCoord pivot = h.begin()->first;
                Rational pivot_value = h.begin()->second;
                Row nr{std::move(pivot), std::move(pivot_value), std::move(h), {}};
                nr.tails.push_back({Rational(1), std::move(tail)});
                rows.push_back(std::move(nr));
            }
        }
        for (Row& r : rows)
            if (!tuples_zero(std::move(r.tails))) return false;
    }
    return true;
}

} // namespace

bool ChainSum::is_zero() const {
    if (terms_.empty()) return true;
    std::vector<TupleTerm> tuples;
    tuples.reserve(terms_.size());
    for (const auto& [c, chain] : terms_) tuples.push_back({c, chain.entries()});
    return tuples_zero(std::move(tuples));
}

namespace {

int pow_sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

Rational sign_rational(int exponent) { return Rational(pow_sign(exponent)); }

// Display-order entries with slot i (1-based, innermost = 1) replaced.
std::vector<Morphism> with_slot(const Chain& c, std::size_t i, const Morphism& m) {
    std::vector<Morphism> e = c.entries();
    e[c.length() - i] = m;
    return e;
}

} // namespace

ChainSum b_delta(const Chain& c) {
    const std::size_t l = c.length();
    ChainSum out;
    out.add(Rational(1), Chain(with_slot(c, l, delta(c.phi(l)))));
    for (std::size_t i = 1; i + 1 <= l && l >= 2; ++i)
        out.add(sign_rational(c.eps(i + 1)), Chain(with_slot(c, i, delta(c.phi(i)))));
    return out;
}

ChainSum b_mu(const Chain& c) {
    ChainSum out = b_mu_doubleprime(c);
    const std::size_t l = c.length();
    if (l < 2) return out;
    // wrap-around term: -(-1)^{|s Phi_1|(eps_2 + 1)} (Phi_1 Phi_l)[Phi_{l-1}|...|Phi_2]
    int sp1 = (parity_bit(c.phi(1).parity()) + 1) % 2;
    int expo = sp1 * ((c.eps(2) + 1) % 2);
    std::vector<Morphism> entries;
    entries.push_back(compose(c.phi(1), c.phi(l)));
    for (std::size_t j = l - 1; j >= 2; --j) entries.push_back(c.phi(j));
    out.add(sign_rational(expo + 1), Chain(std::move(entries)));
    return out;
}

ChainSum b_mu_prime(const Chain& c) {
    ChainSum out = b_mu(c);
    const std::size_t l = c.length();
    if (l < 2) return out;
    // remove the first term: (-1)^{|Phi_l|} (Phi_l Phi_{l-1})[...]
    std::vector<Morphism> entries;
    entries.push_back(compose(c.phi(l), c.phi(l - 1)));
    for (std::size_t j = l - 2; j >= 1; --j) entries.push_back(c.phi(j));
    out.add(sign_rational(parity_bit(c.phi(l).parity()) + 1), Chain(std::move(entries)));
    return out;
}

ChainSum b_mu_doubleprime(const Chain& c) {
    const std::size_t l = c.length();
    ChainSum out;
    if (l < 2) return out;
    {
        std::vector<Morphism> entries;
        entries.push_back(compose(c.phi(l), c.phi(l - 1)));
        for (std::size_t j = l - 2; j >= 1; --j) entries.push_back(c.phi(j));
        out.add(sign_rational(parity_bit(c.phi(l).parity())), Chain(std::move(entries)));
    }
    // interior merges: -(-1)^{eps_{i+1}} Phi_l[...|Phi_{i+1} Phi_i|...|Phi_1]
    for (std::size_t i = 1; i + 2 <= l; ++i) {
        std::vector<Morphism> entries;
        for (std::size_t j = l; j >= i + 2; --j) entries.push_back(c.phi(j));
        entries.push_back(compose(c.phi(i + 1), c.phi(i)));
        for (std::size_t j = i; j >= 2; --j) entries.push_back(c.phi(j - 1));
        out.add(sign_rational(c.eps(i + 1) + 1), Chain(std::move(entries)));
    }
    return out;
}

ChainSum full_b(const Chain& c) { return b_delta(c) + b_mu(c); }

ChainSum tau(const Chain& c) {
    const std::size_t l = c.length();
    if (l == 1) return ChainSum(Rational(1), c);
    int spl = (parity_bit(c.phi(l).parity()) + 1) % 2;
    int rest = 0;   // eps_1 - |s Phi_l| = sum_{j < l} |s Phi_j|
    for (std::size_t j = 1; j + 1 <= l; ++j) rest += (parity_bit(c.phi(j).parity()) + 1) % 2;
    std::vector<Morphism> entries;   // Phi_{l-1}[Phi_{l-2}|...|Phi_1|Phi_l]
    for (std::size_t j = l - 1; j >= 1; --j) entries.push_back(c.phi(j));
    entries.push_back(c.phi(l));
    return ChainSum(sign_rational(spl * (rest % 2)), Chain(std::move(entries)));
}

ChainSum norm_n(const Chain& c) {
    ChainSum out(Rational(1), c);
    ChainSum cur(Rational(1), c);
    for (std::size_t i = 1; i < c.length(); ++i) {
        cur = tau(cur);
        out.add(cur);
    }
    return out;
}

namespace {
template <typename F>
ChainSum lift(const ChainSum& s, F&& f) {
    ChainSum out;
    for (const auto& [c, chain] : s.terms()) out.add(f(chain).scaled(c));
    return out;
}
} // namespace

ChainSum b_delta(const ChainSum& s) { return lift(s, [](const Chain& c) { return b_delta(c); }); }
ChainSum b_mu(const ChainSum& s) { return lift(s, [](const Chain& c) { return b_mu(c); }); }
ChainSum b_mu_prime(const ChainSum& s) { return lift(s, [](const Chain& c) { return b_mu_prime(c); }); }
ChainSum b_mu_doubleprime(const ChainSum& s) { return lift(s, [](const Chain& c) { return b_mu_doubleprime(c); }); }
ChainSum full_b(const ChainSum& s) { return lift(s, [](const Chain& c) { return full_b(c); }); }
ChainSum tau(const ChainSum& s) { return lift(s, [](const Chain& c) { return tau(c); }); }
ChainSum norm_n(const ChainSum& s) { return lift(s, [](const Chain& c) { return norm_n(c); }); }

} // namespace mfcy
