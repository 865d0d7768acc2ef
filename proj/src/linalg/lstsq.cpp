#include "shortspec/errors.hpp"
#include "shortspec/linalg.hpp"

#include <string>

namespace shortspec {

LeastSquares lstsq(const Matrix& a, std::span<const Complex> b) {
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    if (b.size() != m) throw SizeError("lstsq: right-hand side has " + std::to_string(b.size()) + " entries, expected " +
                                       std::to_string(m));
    if (m < k) throw SizeError("lstsq needs at least as many rows as columns");

    const PrecisionContext& ctx = a.context();
    const Real tol = a.frobenius_norm() * pow10(ctx, -(ctx.digits() + ctx.guard_digits() / 2));

    // q holds the orthonormal columns, r the upper-triangular factor.
    Matrix q = a;
    Matrix r(ctx, k, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex dot(ctx);
                for (std::size_t row = 0; row < m; ++row) dot += conj_mul(q(row, i), q(row, j));
                for (std::size_t row = 0; row < m; ++row) q(row, j) -= q(row, i) * dot;
                r(i, j) += dot;
            }
        }
        Real col_norm2(ctx);
        for (std::size_t row = 0; row < m; ++row) col_norm2 += norm(q(row, j));
        const Real col_norm = sqrt(col_norm2);
        if (col_norm <= tol) {
            throw RankError("lstsq: column " + std::to_string(j) + " is numerically dependent on columns 0.." +
                                (j == 0 ? std::string("(none)") : std::to_string(j - 1)),
                            j);
        }
        r(j, j) = Complex(col_norm);
        for (std::size_t row = 0; row < m; ++row) q(row, j) /= col_norm;
    }

    // x = R^-1 Q^H b
    std::vector<Complex> qb;
    qb.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        Complex dot(ctx);
        for (std::size_t row = 0; row < m; ++row) dot += conj_mul(q(row, j), b[row]);
        qb.push_back(std::move(dot));
    }
    std::vector<Complex> x(k, Complex(ctx));
    for (std::size_t jj = k; jj-- > 0;) {
        Complex acc = qb[jj];
        for (std::size_t c = jj + 1; c < k; ++c) acc -= r(jj, c) * x[c];
        x[jj] = acc / r(jj, jj).re;
    }

    std::vector<Complex> residual = a * std::span<const Complex>(x);
    for (std::size_t row = 0; row < m; ++row) residual[row] -= b[row];
    Real res_norm = vector_norm(residual);
    return {std::move(x), std::move(res_norm)};
}

}  // namespace shortspec
