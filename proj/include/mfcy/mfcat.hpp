#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "mfcy/linalg.hpp"
#include "mfcy/poly.hpp"
#include "mfcy/residue.hpp"

namespace mfcy {

enum class Parity { even, odd };

inline Parity flip(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }
inline int parity_bit(Parity p) { return p == Parity::odd ? 1 : 0; }

using PolyMatrix = Matrix<Poly>;

PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_scale(const PolyMatrix& a, const Rational& c);
PolyMatrix poly_identity(std::size_t k, std::size_t nvars);
PolyMatrix poly_zero_matrix(std::size_t rows, std::size_t cols, std::size_t nvars);
bool poly_matrix_is_zero(const PolyMatrix& a);

/// Z/2-graded block matrix between graded free modules with equal-rank halves.
/// Even shape stores (B11, B22); odd shape stores (B12, B21). Both blocks are
/// rows() x cols() where rows/cols are the half-ranks of target and source.
class BlockMatrix {
public:
    static BlockMatrix even(PolyMatrix b11, PolyMatrix b22);
    static BlockMatrix odd(PolyMatrix b12, PolyMatrix b21);
    static BlockMatrix zero(Parity parity, std::size_t rows, std::size_t cols, std::size_t nvars);
    static BlockMatrix identity(std::size_t k, std::size_t nvars);

    Parity parity() const { return parity_; }
    std::size_t rows() const { return a_.rows(); }
    std::size_t cols() const { return a_.cols(); }
    std::size_t nvars() const { return nvars_; }

    /// First stored block: B11 for even, B12 for odd.
    const PolyMatrix& first() const { return a_; }
    /// Second stored block: B22 for even, B21 for odd.
    const PolyMatrix& second() const { return b_; }

    /// Entry of the full 2x2 block picture; zero blocks are materialized on demand.
    Poly full_entry(std::size_t i, std::size_t j) const;

    BlockMatrix operator*(const BlockMatrix& o) const;
    BlockMatrix operator+(const BlockMatrix& o) const;
    BlockMatrix operator-() const;
    BlockMatrix scaled(const Rational& c) const;
    BlockMatrix partial_derivative(std::size_t i) const;

    /// tr(B11) - tr(B22) for even square matrices; identically zero for odd.
    Poly supertrace() const;

    bool is_zero() const { return poly_matrix_is_zero(a_) && poly_matrix_is_zero(b_); }
    friend bool operator==(const BlockMatrix& x, const BlockMatrix& y);
    static int compare(const BlockMatrix& x, const BlockMatrix& y);

private:
    BlockMatrix(Parity p, PolyMatrix a, PolyMatrix b, std::size_t nvars)
        : parity_(p), a_(std::move(a)), b_(std::move(b)), nvars_(nvars) {}

    Parity parity_;
    PolyMatrix a_, b_;
    std::size_t nvars_;
};

/// Regular function with isolated critical points; lazily carries its
/// Jacobian ideal data.
class Superpotential {
public:
    explicit Superpotential(Poly f) : f_(std::move(f)) {}

    const Poly& f() const { return f_; }
    std::size_t nvars() const { return f_.nvars(); }

    /// Computed on first use; throws when the critical locus is not isolated.
    const CriticalLocus& locus() const;

    /// True when f is nilpotent in the Milnor algebra (sufficient for "the
    /// only critical value is zero").
    bool critical_value_zero() const;

private:
    Poly f_;
    mutable std::once_flag locus_once_;
    mutable std::optional<CriticalLocus> locus_;
};

class MatrixFactorization;
using SuperpotentialPtr = std::shared_ptr<const Superpotential>;
using FactorizationPtr = std::shared_ptr<const MatrixFactorization>;

/// Pair of k x k polynomial matrices with D12 D21 = D21 D12 = f * Id.
class MatrixFactorization {
public:
    /// Validates both products exactly; throws ValidationError naming the
    /// first offending entry otherwise.
    static FactorizationPtr make(SuperpotentialPtr w, PolyMatrix d12, PolyMatrix d21);

    /// Graded tensor product, applied left to right, of the elementary
    /// factorizations (u_i, v_i) of f = sum u_i v_i.
    static FactorizationPtr koszul(SuperpotentialPtr w,
                                   const std::vector<std::pair<Poly, Poly>>& pairs);

    const SuperpotentialPtr& superpotential() const { return w_; }
    std::size_t size() const { return d12_.rows(); }
    std::size_t nvars() const { return w_->nvars(); }
    const PolyMatrix& d12() const { return d12_; }
    const PolyMatrix& d21() const { return d21_; }

    /// D as an odd endomorphism-shaped block matrix.
    BlockMatrix as_block() const;
    /// Entrywise partial derivative of D (odd block shape).
    BlockMatrix d_partial(std::size_t i) const;

    static int compare(const MatrixFactorization& a, const MatrixFactorization& b);
    friend bool operator==(const MatrixFactorization& a, const MatrixFactorization& b) {
        return compare(a, b) == 0;
    }

private:
    MatrixFactorization(SuperpotentialPtr w, PolyMatrix d12, PolyMatrix d21)
        : w_(std::move(w)), d12_(std::move(d12)), d21_(std::move(d21)) {}

    SuperpotentialPtr w_;
    PolyMatrix d12_, d21_;
};

/// Morphism of factorizations: a parity-homogeneous block matrix together
/// with its source and target objects.
class Morphism {
public:
    Morphism(FactorizationPtr source, FactorizationPtr target, BlockMatrix mat);

    const FactorizationPtr& source() const { return source_; }
    const FactorizationPtr& target() const { return target_; }
    Parity parity() const { return mat_.parity(); }
    const BlockMatrix& block() const { return mat_; }

    static Morphism identity(const FactorizationPtr& d);
    static Morphism zero(const FactorizationPtr& source, const FactorizationPtr& target, Parity p);

    Morphism operator+(const Morphism& o) const;
    Morphism operator-() const;
    Morphism scaled(const Rational& c) const;

    static int compare(const Morphism& a, const Morphism& b);
    friend bool operator==(const Morphism& a, const Morphism& b) { return compare(a, b) == 0; }

private:
    FactorizationPtr source_, target_;
    BlockMatrix mat_;
};

/// delta(Phi) = D'' Phi - (-1)^{|Phi|} Phi D'.
Morphism delta(const Morphism& phi);

/// Composition psi . phi (matrix product); objects must match.
Morphism compose(const Morphism& psi, const Morphism& phi);

/// Supertrace of an endomorphism.
Poly supertrace(const Morphism& phi);

/// Entrywise partial derivative (not a morphism of the category; block shape
/// and objects are kept for downstream products).
Morphism d_partial(const Morphism& phi, std::size_t i);

/// Block matrix with a declared common denominator, entries num/den.
struct RationalBlockMatrix {
    BlockMatrix numerator;
    Poly denominator;
    std::pair<Poly, Poly> entry(std::size_t i, std::size_t j) const {
        return {numerator.full_entry(i, j), denominator};
    }
};

/// Contraction h = (d_i D)/(d_i f) on the chart d_i f != 0, with the identity
/// D h + h D = 1 verified by exact cross-multiplication. Throws on a
/// degenerate chart (d_i f identically zero).
RationalBlockMatrix local_contraction(const MatrixFactorization& d, std::size_t i);

} // namespace mfcy
