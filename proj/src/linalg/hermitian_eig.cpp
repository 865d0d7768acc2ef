#include "shortspec/errors.hpp"
#include "shortspec/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace shortspec {

namespace {

constexpr int kMaxSweeps = 30;

Real off_diagonal_norm(const Matrix& a) {
    Real sum(a.context());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += norm(a(i, j));
    return sqrt(sum);
}

// One complex Jacobi rotation J zeroing a(p,q), applied as A <- J^H A J and
// V <- V J. With a(p,q) = g e^{i phi} and the real rotation (c, s) of the
// phase-stripped 2x2 block, J = [[c, s e^{i phi}], [-s e^{-i phi}, c]].
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const PrecisionContext& ctx = a.context();
    const Real g = abs(a(p, q));
    if (g.is_zero()) return;

    const Real& app = a(p, p).re;
    const Real& aqq = a(q, q).re;
    const Real tau = (aqq - app) / (g * 2L);
    Real t(ctx, 1L);
    if (!tau.is_zero()) {
        t = Real(ctx, 1L) / (abs(tau) + sqrt(Real(ctx, 1L) + tau * tau));
        if (tau.sign() < 0) t = -t;
    }
    const Real c = Real(ctx, 1L) / sqrt(Real(ctx, 1L) + t * t);
    const Real s = t * c;
    // sigma = s e^{i phi}
    const Complex sigma = a(p, q) * (s / g);
    const Complex sigma_bar = conj(sigma);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        Complex akp = a(k, p) * c - sigma_bar * a(k, q);
        Complex akq = sigma * a(k, p) + a(k, q) * c;
        a(p, k) = conj(akp);
        a(q, k) = conj(akq);
        a(k, p) = std::move(akp);
        a(k, q) = std::move(akq);
    }
    const Real tg = t * g;
    a(p, p) = Complex(app - tg);
    a(q, q) = Complex(aqq + tg);
    a(p, q) = Complex(ctx);
    a(q, p) = Complex(ctx);

    for (std::size_t k = 0; k < n; ++k) {
        Complex vkp = v(k, p) * c - sigma_bar * v(k, q);
        Complex vkq = sigma * v(k, p) + v(k, q) * c;
        v(k, p) = std::move(vkp);
        v(k, q) = std::move(vkq);
    }
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& input, std::size_t max_dimension) {
    if (input.rows() != input.cols()) throw ContractError("hermitian_eig needs a square matrix");
    if (input.rows() > max_dimension)
        throw SizeError("hermitian_eig dimension " + std::to_string(input.rows()) + " exceeds limit " +
                        std::to_string(max_dimension));
    if (!input.is_hermitian()) throw ContractError("hermitian_eig input is not Hermitian");

    const PrecisionContext& ctx = input.context();
    const std::size_t n = input.rows();
    Matrix a = input;
    Matrix v = Matrix::identity(ctx, n);

    const Real scale = input.frobenius_norm();
    // 10^-(digits + guard/2) * ||A||_F
    const Real tol = scale * pow10(ctx, -(ctx.digits() + ctx.guard_digits() / 2));

    int sweep = 0;
    Real off = off_diagonal_norm(a);
    while (off > tol) {
        if (sweep == kMaxSweeps) {
            const Real rel = scale.is_zero() ? off : off / scale;
            throw ConvergenceError("Jacobi eigensolver did not converge", sweep, rel.to_double());
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        ++sweep;
        off = off_diagonal_norm(a);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).re < a(j, j).re; });

    HermitianEig out{{}, Matrix(ctx, n, n)};
    out.eigenvalues.reserve(n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        out.eigenvalues.push_back(a(src, src).re);
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, col) = v(r, src);
    }
    return out;
}

}  // namespace shortspec
