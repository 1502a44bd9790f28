#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mfcy/poly.hpp"
#include "mfcy/rational.hpp"

namespace mfcy {

/// Dense matrix over an exact coefficient type.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrixDense = Matrix<Rational>;

/// Row rank by exact Gaussian elimination.
std::size_t rational_rank(RationalMatrixDense m);

/// One solution of A x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> rational_solve(const RationalMatrixDense& a,
                                                    const std::vector<Rational>& b);

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination; all intermediate divisions are exact.
Poly poly_det_bareiss(Matrix<Poly> m);

} // namespace mfcy
