#pragma once

#include <vector>

#include "mfcy/mfcat.hpp"

namespace mfcy {

/// Cyclic word of composable morphisms Phi_l[Phi_{l-1}|...|Phi_1]:
/// Phi_i : D(i) -> D(i+1) for i < l and Phi_l : D(l) -> D(1). Entries are
/// stored and passed in display order, outermost (Phi_l) first. The parity
/// shift of the inner slots is never materialized; it enters only through
/// the sign conventions below.
class Chain {
public:
    /// entries in display order [Phi_l, ..., Phi_1]; validates composability.
    explicit Chain(std::vector<Morphism> entries);

    std::size_t length() const { return entries_.size(); }
    /// 1-based access: phi(1) is the innermost entry, phi(length()) the outermost.
    const Morphism& phi(std::size_t i) const { return entries_[entries_.size() - i]; }
    const std::vector<Morphism>& entries() const { return entries_; }

    /// eps(i) = sum_{j >= i} (|Phi_j| + 1) mod 2 — the shifted-parity suffix sum.
    int eps(std::size_t i) const;
    /// Parity of the chain in the Hochschild complex: |Phi_l| + sum_{j<l} |s Phi_j|.
    int degree() const { return (eps(1) + 1) % 2; }

    static int compare(const Chain& a, const Chain& b);
    friend bool operator==(const Chain& a, const Chain& b) { return compare(a, b) == 0; }

private:
    std::vector<Morphism> entries_;
};

/// Formal rational combination of chains. Storage is the canonical
/// structural form: terms sorted, structurally equal chains merged, zero
/// coefficients and chains with a zero entry dropped. Zero testing and
/// equality are multilinear (chains are identified as tensors in their
/// entries), so cancellations like [delta(psi.phi)] against
/// [delta(psi).phi] + [psi.delta(phi)] are recognized exactly.
class ChainSum {
public:
    ChainSum() = default;
    ChainSum(const Rational& c, const Chain& chain) { add(c, chain); }

    void add(const Rational& c, const Chain& chain);
    void add(const ChainSum& o);
    ChainSum scaled(const Rational& c) const;

    /// Exact zero test in the chain complex (multilinear in the entries).
    bool is_zero() const;
    /// Structural emptiness of the stored form.
    bool empty() const { return terms_.empty(); }
    const std::vector<std::pair<Rational, Chain>>& terms() const { return terms_; }

    friend ChainSum operator+(ChainSum a, const ChainSum& b) { a.add(b); return a; }
    friend ChainSum operator-(ChainSum a, const ChainSum& b) { a.add(b.scaled(Rational(-1))); return a; }
    friend bool operator==(const ChainSum& a, const ChainSum& b) { return (a - b).is_zero(); }

private:
    std::vector<std::pair<Rational, Chain>> terms_;
};

/// Differential applying delta in each slot with sign (-1)^{eps(i+1)}.
ChainSum b_delta(const Chain& c);
/// Multiplication part of the Hochschild differential (zero for l = 1).
ChainSum b_mu(const Chain& c);
/// b_mu without its first (outer-merge) term.
ChainSum b_mu_prime(const Chain& c);
/// b_mu without its wrap-around term.
ChainSum b_mu_doubleprime(const Chain& c);
/// Full Hochschild differential b = b_delta + b_mu.
ChainSum full_b(const Chain& c);
/// Signed cyclic rotation; the outermost entry moves to the innermost slot.
ChainSum tau(const Chain& c);
/// Norm operator: sum of tau^i, i = 0..l-1.
ChainSum norm_n(const Chain& c);

ChainSum b_delta(const ChainSum& s);
ChainSum b_mu(const ChainSum& s);
ChainSum b_mu_prime(const ChainSum& s);
ChainSum b_mu_doubleprime(const ChainSum& s);
ChainSum full_b(const ChainSum& s);
ChainSum tau(const ChainSum& s);
ChainSum norm_n(const ChainSum& s);

} // namespace mfcy
