#include "mfcy/linalg.hpp"

#include "mfcy/error.hpp"

namespace mfcy {

std::size_t rational_rank(RationalMatrixDense m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(rank, j), m.at(pivot, j));
        Rational inv = m.at(rank, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            Rational f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<Rational>> rational_solve(const RationalMatrixDense& a,
                                                    const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw ValidationError("rational_solve: dimension mismatch");
    const std::size_t n = a.rows(), m = a.cols();
    Matrix<Rational> aug(n, m + 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, m) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
        std::size_t pivot = rank;
        while (pivot < n && aug.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) continue;
        for (std::size_t j = 0; j <= m; ++j) std::swap(aug.at(rank, j), aug.at(pivot, j));
        Rational inv = aug.at(rank, col).inverse();
        for (std::size_t j = col; j <= m; ++j) aug.at(rank, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || aug.at(i, col).is_zero()) continue;
            Rational f = aug.at(i, col);
            for (std::size_t j = col; j <= m; ++j) aug.at(i, j) -= f * aug.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < n; ++i)
        if (!aug.at(i, m).is_zero()) return std::nullopt;
    std::vector<Rational> x(m, Rational(0));
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = aug.at(r, m);
    return x;
}

Poly poly_det_bareiss(Matrix<Poly> m) {
    if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) throw ValidationError("determinant of empty matrix");
    const std::size_t nv = m.at(0, 0).nvars();
    Poly prev = Poly::constant(nv, 1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m.at(swap_row, k).is_zero()) ++swap_row;
            if (swap_row == n) return Poly(nv);     // singular
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                auto q = Poly::exact_divide(num, prev);
                if (!q) throw ValidationError("Bareiss elimination: non-exact division");
                m.at(i, j) = std::move(*q);
            }
            m.at(i, k) = Poly(nv);
        }
        prev = m.at(k, k);
    }
    Poly det = m.at(n - 1, n - 1);
    return sign < 0 ? -det : det;
}

} // namespace mfcy
