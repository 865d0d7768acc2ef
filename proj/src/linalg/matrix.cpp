#include "shortspec/errors.hpp"
#include "shortspec/linalg.hpp"

#include <string>

namespace shortspec {

Matrix::Matrix(const PrecisionContext& ctx, std::size_t rows, std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw SizeError("matrix dimensions must be positive");
    data_.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) data_.emplace_back(ctx);
}

Matrix Matrix::identity(const PrecisionContext& ctx, std::size_t n) {
    Matrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i).re = Real(ctx, 1L);
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(ctx_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = conj((*this)(i, j));
    return out;
}

Real Matrix::frobenius_norm() const {
    Real sum(ctx_);
    for (const Complex& z : data_) sum += norm(z);
    return sqrt(sum);
}

Real Matrix::max_abs() const {
    Real m(ctx_);
    for (const Complex& z : data_) m = max(m, abs(z));
    return m;
}

bool Matrix::is_hermitian() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (!(*this)(i, i).im.is_zero()) return false;
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if (!((*this)(i, j) == conj((*this)(j, i)))) return false;
        }
    }
    return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw SizeError("matrix product shape mismatch: " + std::to_string(a.cols()) + " vs " +
                        std::to_string(b.rows()));
    Matrix out(wider(a.context(), b.context()), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("matrix sum shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("matrix difference shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

std::vector<Complex> operator*(const Matrix& a, std::span<const Complex> x) {
    if (a.cols() != x.size()) throw SizeError("matrix-vector shape mismatch");
    std::vector<Complex> out;
    out.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex sum(a.context());
        for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * x[j];
        out.push_back(std::move(sum));
    }
    return out;
}

Real vector_norm(std::span<const Complex> v) {
    if (v.empty()) throw SizeError("norm of empty vector");
    Real sum(v.front().context());
    for (const Complex& z : v) sum += norm(z);
    return sqrt(sum);
}

}  // namespace shortspec
