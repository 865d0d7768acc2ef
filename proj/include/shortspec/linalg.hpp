#pragma once

// Dense arbitrary-precision complex linear algebra for the small (n <= 64)
// matrices that appear in harmonic inversion.

#include "shortspec/hiprec.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace shortspec {

class Matrix {
public:
    Matrix(const PrecisionContext& ctx, std::size_t rows, std::size_t cols);

    static Matrix identity(const PrecisionContext& ctx, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrecisionContext& context() const noexcept { return ctx_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix adjoint() const;
    Real frobenius_norm() const;
    Real max_abs() const;
    // Exact test A(i,j) == conj(A(j,i)), including a real diagonal.
    bool is_hermitian() const;

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    PrecisionContext ctx_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
std::vector<Complex> operator*(const Matrix& a, std::span<const Complex> x);

inline constexpr std::size_t kDefaultMaxDimension = 64;

struct HermitianEig {
    std::vector<Real> eigenvalues;  // ascending
    Matrix eigenvectors;            // column j pairs with eigenvalues[j]
};

// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius norm drops
// to 10^-(digits + guard/2) * ||A||_F; gives up after 30 sweeps.
HermitianEig hermitian_eig(const Matrix& a, std::size_t max_dimension = kDefaultMaxDimension);

// All eigenvalues of a general square matrix: Householder reduction to upper
// Hessenberg form, then Wilkinson-shifted QR with deflation. Sorted by
// argument, then modulus.
std::vector<Complex> general_eigenvalues(const Matrix& a, std::size_t max_dimension = kDefaultMaxDimension);

struct LeastSquares {
    std::vector<Complex> x;
    Real residual_norm;  // ||A x - b||_2
};

// Modified Gram-Schmidt QR with one reorthogonalisation pass. Throws
// RankError naming the first column whose remaining norm falls below
// 10^-(digits + guard/2) * ||A||_F.
LeastSquares lstsq(const Matrix& a, std::span<const Complex> b);

Real vector_norm(std::span<const Complex> v);

}  // namespace shortspec
