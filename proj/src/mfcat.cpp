#include "mfcy/mfcat.hpp"

#include <string>

#include "mfcy/error.hpp"
#include "mfcy/groebner.hpp"

namespace mfcy {

PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows()) throw ValidationError("matrix product shape mismatch");
    const std::size_t nv = a.rows() && a.cols() ? a.at(0, 0).nvars() : (b.rows() && b.cols() ? b.at(0, 0).nvars() : 0);
    PolyMatrix r(a.rows(), b.cols(), Poly(nv));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b.at(k, j).is_zero()) continue;
                r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    return r;
}

PolyMatrix poly_matrix_add(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("matrix sum shape mismatch");
    PolyMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) += b.at(i, j);
    return r;
}

PolyMatrix poly_matrix_scale(const PolyMatrix& a, const Rational& c) {
    PolyMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = r.at(i, j).scaled(c);
    return r;
}

PolyMatrix poly_identity(std::size_t k, std::size_t nvars) {
    PolyMatrix r(k, k, Poly(nvars));
    for (std::size_t i = 0; i < k; ++i) r.at(i, i) = Poly::constant(nvars, 1);
    return r;
}

PolyMatrix poly_zero_matrix(std::size_t rows, std::size_t cols, std::size_t nvars) {
    return PolyMatrix(rows, cols, Poly(nvars));
}

bool poly_matrix_is_zero(const PolyMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// BlockMatrix

BlockMatrix BlockMatrix::even(PolyMatrix b11, PolyMatrix b22) {
    if (b11.rows() != b22.rows() || b11.cols() != b22.cols())
        throw ValidationError("even block matrix: block shapes differ");
    std::size_t nv = b11.rows() && b11.cols() ? b11.at(0, 0).nvars() : 0;
    return BlockMatrix(Parity::even, std::move(b11), std::move(b22), nv);
}

BlockMatrix BlockMatrix::odd(PolyMatrix b12, PolyMatrix b21) {
    if (b12.rows() != b21.rows() || b12.cols() != b21.cols())
        throw ValidationError("odd block matrix: block shapes differ");
    std::size_t nv = b12.rows() && b12.cols() ? b12.at(0, 0).nvars() : 0;
    return BlockMatrix(Parity::odd, std::move(b12), std::move(b21), nv);
}

BlockMatrix BlockMatrix::zero(Parity parity, std::size_t rows, std::size_t cols, std::size_t nvars) {
    return BlockMatrix(parity, poly_zero_matrix(rows, cols, nvars), poly_zero_matrix(rows, cols, nvars), nvars);
}

BlockMatrix BlockMatrix::identity(std::size_t k, std::size_t nvars) {
    return BlockMatrix(Parity::even, poly_identity(k, nvars), poly_identity(k, nvars), nvars);
}

Poly BlockMatrix::full_entry(std::size_t i, std::size_t j) const {
    const std::size_t r = rows(), c = cols();
    bool top = i < r, left = j < c;
    if (parity_ == Parity::even) {
        if (top && left) return a_.at(i, j);
        if (!top && !left) return b_.at(i - r, j - c);
    } else {
        if (top && !left) return a_.at(i, j - c);
        if (!top && left) return b_.at(i - r, j);
    }
    return Poly(nvars_);
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& o) const {
    // even  = (11, 22), odd = (12, 21); plain matrix multiplication.
    if (parity_ == Parity::even && o.parity_ == Parity::even)
        return even(poly_matrix_mul(a_, o.a_), poly_matrix_mul(b_, o.b_));
    if (parity_ == Parity::even && o.parity_ == Parity::odd)
        return odd(poly_matrix_mul(a_, o.a_), poly_matrix_mul(b_, o.b_));
    if (parity_ == Parity::odd && o.parity_ == Parity::even)
        return odd(poly_matrix_mul(a_, o.b_), poly_matrix_mul(b_, o.a_));
    return even(poly_matrix_mul(a_, o.b_), poly_matrix_mul(b_, o.a_));
}

BlockMatrix BlockMatrix::operator+(const BlockMatrix& o) const {
    if (parity_ != o.parity_) throw ValidationError("block matrix sum: parity mismatch");
    return BlockMatrix(parity_, poly_matrix_add(a_, o.a_), poly_matrix_add(b_, o.b_), nvars_);
}

BlockMatrix BlockMatrix::operator-() const { return scaled(Rational(-1)); }

BlockMatrix BlockMatrix::scaled(const Rational& c) const {
    return BlockMatrix(parity_, poly_matrix_scale(a_, c), poly_matrix_scale(b_, c), nvars_);
}

BlockMatrix BlockMatrix::partial_derivative(std::size_t i) const {
    PolyMatrix a = a_, b = b_;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            a.at(r, c) = a.at(r, c).partial_derivative(i);
            b.at(r, c) = b.at(r, c).partial_derivative(i);
        }
    return BlockMatrix(parity_, std::move(a), std::move(b), nvars_);
}

Poly BlockMatrix::supertrace() const {
    Poly t(nvars_);
    if (parity_ == Parity::odd) return t;    // zero diagonal blocks
    if (rows() != cols()) throw ValidationError("supertrace of non-square block matrix");
    for (std::size_t i = 0; i < rows(); ++i) t += a_.at(i, i) - b_.at(i, i);
    return t;
}

bool operator==(const BlockMatrix& x, const BlockMatrix& y) {
    return x.parity_ == y.parity_ && x.a_ == y.a_ && x.b_ == y.b_;
}

int BlockMatrix::compare(const BlockMatrix& x, const BlockMatrix& y) {
    if (x.parity_ != y.parity_) return x.parity_ == Parity::even ? -1 : 1;
    if (x.rows() != y.rows()) return x.rows() < y.rows() ? -1 : 1;
    if (x.cols() != y.cols()) return x.cols() < y.cols() ? -1 : 1;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            int c = Poly::compare(x.a_.at(i, j), y.a_.at(i, j));
            if (c != 0) return c;
            c = Poly::compare(x.b_.at(i, j), y.b_.at(i, j));
            if (c != 0) return c;
        }
    return 0;
}

// ---------------------------------------------------------------------------
// Superpotential

const CriticalLocus& Superpotential::locus() const {
    std::call_once(locus_once_, [this] { locus_ = critical_locus(f_); });
    return *locus_;
}

bool Superpotential::critical_value_zero() const {
    const CriticalLocus& cl = locus();
    Matrix<Rational> mf = multiplication_matrix(f_, cl.gb, cl.milnor_basis);
    // f nilpotent in the Milnor algebra iff mf^mu == 0.
    const std::size_t mu = cl.milnor_number;
    Matrix<Rational> acc = mf;
    for (std::size_t step = 1; step < mu; ++step) {
        bool zero = true;
        for (std::size_t i = 0; i < mu && zero; ++i)
            for (std::size_t j = 0; j < mu && zero; ++j)
                if (!acc.at(i, j).is_zero()) zero = false;
        if (zero) return true;
        Matrix<Rational> next(mu, mu, Rational(0));
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t k = 0; k < mu; ++k) {
                if (acc.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < mu; ++j) next.at(i, j) += acc.at(i, k) * mf.at(k, j);
            }
        acc = next;
    }
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            if (!acc.at(i, j).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// MatrixFactorization

FactorizationPtr MatrixFactorization::make(SuperpotentialPtr w, PolyMatrix d12, PolyMatrix d21) {
    if (!w) throw ValidationError("factorization without superpotential");
    const std::size_t k = d12.rows();
    if (d12.cols() != k || d21.rows() != k || d21.cols() != k)
        throw ValidationError("factorization blocks must be square of equal size");
    const std::size_t nv = w->nvars();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (d12.at(i, j).nvars() != nv || d21.at(i, j).nvars() != nv)
                throw ValidationError("factorization entries live in the wrong ring");

    auto check = [&](const PolyMatrix& a, const PolyMatrix& b, const char* which) {
        PolyMatrix p = poly_matrix_mul(a, b);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Poly expect = i == j ? w->f() : Poly(nv);
                if (p.at(i, j) != expect)
                    throw ValidationError(std::string("not a factorization: ") + which +
                                          " != f*Id at block (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ")");
            }
    };
    check(d12, d21, "D12*D21");
    check(d21, d12, "D21*D12");
    return FactorizationPtr(new MatrixFactorization(std::move(w), std::move(d12), std::move(d21)));
}

FactorizationPtr MatrixFactorization::koszul(SuperpotentialPtr w,
                                             const std::vector<std::pair<Poly, Poly>>& pairs) {
    if (!w) throw ValidationError("koszul factorization without superpotential");
    if (pairs.empty()) throw ValidationError("koszul factorization needs at least one pair");
    const std::size_t nv = w->nvars();
    Poly sum(nv);
    for (const auto& [u, v] : pairs) sum += u * v;
    if (sum != w->f())
        throw ValidationError("koszul factorization: sum of u_i*v_i differs from the superpotential");

    // Elementary factor, then tensor left-to-right:
    //   C12 = [[A12, 1(x)B12], [-1(x)B21, A21]],  C21 = [[A21, -1(x)B12], [1(x)B21, A12]]
    // in the tensor block bases (even: A0B0, A1B1; odd: A1B0, A0B1).
    PolyMatrix d12(1, 1, pairs[0].first), d21(1, 1, pairs[0].second);
    for (std::size_t t = 1; t < pairs.size(); ++t) {
        const Poly &u = pairs[t].first, &v = pairs[t].second;
        const std::size_t k = d12.rows();
        PolyMatrix c12(2 * k, 2 * k, Poly(nv)), c21(2 * k, 2 * k, Poly(nv));
        for (std::size_t i = 0; i < k; ++i) {
            // rows/cols: [0,k) first summand, [k,2k) second.
            c12.at(i, i + k) = u;                  // 1 (x) B12 into (A0B0 <- A0B1)
            c12.at(i + k, i) = -v;                 // -1 (x) B21 into (A1B1 <- A1B0)
            c21.at(i, i + k) = -u;                 // -1 (x) B12 into (A1B0 <- A1B1)
            c21.at(i + k, i) = v;                  // 1 (x) B21 into (A0B1 <- A0B0)
            for (std::size_t j = 0; j < k; ++j) {
                c12.at(i, j) = d12.at(i, j);       // A12 (x) 1 into (A0B0 <- A1B0)
                c12.at(i + k, j + k) = d21.at(i, j);  // A21 (x) 1 into (A1B1 <- A0B1)
                c21.at(i, j) = d21.at(i, j);       // A21 (x) 1 into (A1B0 <- A0B0)
                c21.at(i + k, j + k) = d12.at(i, j);  // A12 (x) 1 into (A0B1 <- A1B1)
            }
        }
        d12 = std::move(c12);
        d21 = std::move(c21);
    }
    return make(std::move(w), std::move(d12), std::move(d21));
}

BlockMatrix MatrixFactorization::as_block() const { return BlockMatrix::odd(d12_, d21_); }

BlockMatrix MatrixFactorization::d_partial(std::size_t i) const {
    return as_block().partial_derivative(i);
}

int MatrixFactorization::compare(const MatrixFactorization& a, const MatrixFactorization& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    int c = Poly::compare(a.w_->f(), b.w_->f());
    if (c != 0) return c;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            c = Poly::compare(a.d12_.at(i, j), b.d12_.at(i, j));
            if (c != 0) return c;
            c = Poly::compare(a.d21_.at(i, j), b.d21_.at(i, j));
            if (c != 0) return c;
        }
    return 0;
}

// ---------------------------------------------------------------------------
// Morphism

Morphism::Morphism(FactorizationPtr source, FactorizationPtr target, BlockMatrix mat)
    : source_(std::move(source)), target_(std::move(target)), mat_(std::move(mat)) {
    if (!source_ || !target_) throw ValidationError("morphism without objects");
    if (mat_.rows() != target_->size() || mat_.cols() != source_->size())
        throw ValidationError("morphism blocks have shape " + std::to_string(mat_.rows()) + "x" +
                              std::to_string(mat_.cols()) + ", expected " +
                              std::to_string(target_->size()) + "x" + std::to_string(source_->size()));
    if (source_->superpotential()->f() != target_->superpotential()->f())
        throw ValidationError("morphism between factorizations of different superpotentials");
}

Morphism Morphism::identity(const FactorizationPtr& d) {
    return Morphism(d, d, BlockMatrix::identity(d->size(), d->nvars()));
}

Morphism Morphism::zero(const FactorizationPtr& source, const FactorizationPtr& target, Parity p) {
    return Morphism(source, target, BlockMatrix::zero(p, target->size(), source->size(), source->nvars()));
}

Morphism Morphism::operator+(const Morphism& o) const {
    if (!(*source_ == *o.source_) || !(*target_ == *o.target_))
        throw ValidationError("morphism sum: object mismatch");
    return Morphism(source_, target_, mat_ + o.mat_);
}

Morphism Morphism::operator-() const { return Morphism(source_, target_, -mat_); }

Morphism Morphism::scaled(const Rational& c) const { return Morphism(source_, target_, mat_.scaled(c)); }

int Morphism::compare(const Morphism& a, const Morphism& b) {
    int c = BlockMatrix::compare(a.mat_, b.mat_);
    if (c != 0) return c;
    c = MatrixFactorization::compare(*a.source_, *b.source_);
    if (c != 0) return c;
    return MatrixFactorization::compare(*a.target_, *b.target_);
}

Morphism delta(const Morphism& phi) {
    const BlockMatrix dpp = phi.target()->as_block();
    const BlockMatrix dp = phi.source()->as_block();
    BlockMatrix left = dpp * phi.block();
    BlockMatrix right = phi.block() * dp;
    BlockMatrix res = phi.parity() == Parity::even ? left + (-right) : left + right;
    return Morphism(phi.source(), phi.target(), std::move(res));
}

Morphism compose(const Morphism& psi, const Morphism& phi) {
    if (!(*psi.source() == *phi.target()))
        throw ValidationError("compose: source of the left morphism differs from target of the right");
    return Morphism(phi.source(), psi.target(), psi.block() * phi.block());
}

Poly supertrace(const Morphism& phi) {
    if (!(*phi.source() == *phi.target())) throw ValidationError("supertrace of a non-endomorphism");
    return phi.block().supertrace();
}

Morphism d_partial(const Morphism& phi, std::size_t i) {
    return Morphism(phi.source(), phi.target(), phi.block().partial_derivative(i));
}

RationalBlockMatrix local_contraction(const MatrixFactorization& d, std::size_t i) {
    if (i >= d.nvars()) throw ValidationError("local_contraction: variable index out of range");
    Poly dif = d.superpotential()->f().partial_derivative(i);
    if (dif.is_zero())
        throw ValidationError("local_contraction: degenerate chart, the partial of f vanishes identically");
    BlockMatrix dd = d.d_partial(i);
    // Cross-multiplied identity: D (d_i D) + (d_i D) D == (d_i f) Id.
    BlockMatrix db = d.as_block();
    BlockMatrix lhs = db * dd + dd * db;
    for (std::size_t r = 0; r < 2 * d.size(); ++r)
        for (std::size_t c = 0; c < 2 * d.size(); ++c) {
            Poly expect = r == c ? dif : Poly(d.nvars());
            if (lhs.full_entry(r, c) != expect)
                throw ValidationError("local_contraction: homotopy identity failed (invalid factorization?)");
        }
    return RationalBlockMatrix{dd, dif};
}

} // namespace mfcy
