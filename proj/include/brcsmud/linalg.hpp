#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace brcsmud {

using Vector = std::vector<double>;

/// Dense row-major matrix. Problem sizes here stay small (tens of rows and
/// columns), so there is no blocking or sparsity, just contiguous storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(data_).subspan(r * cols_, cols_);
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> a);

/// m * x
Vector matvec(const Matrix& m, std::span<const double> x);
/// m^T * x
Vector matvec_transpose(const Matrix& m, std::span<const double> x);

struct QrFactors {
    Matrix q;  // orthonormal columns, same shape as the input
    Matrix r;  // square upper triangular, nonnegative diagonal
};

/// Skinny QR of a tall matrix (rows >= cols) by Householder reflections.
/// Column signs are flipped so that diag(R) >= 0, making the factorization
/// unique for full-column-rank inputs.
QrFactors skinny_qr(const Matrix& a);

}  // namespace brcsmud
