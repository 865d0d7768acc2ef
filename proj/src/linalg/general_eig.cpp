#include "shortspec/errors.hpp"
#include "shortspec/linalg.hpp"

#include <algorithm>
#include <string>

namespace shortspec {

namespace {

// Householder reduction to upper Hessenberg form, in place.
void reduce_to_hessenberg(Matrix& h) {
    const PrecisionContext& ctx = h.context();
    const std::size_t n = h.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        Real xnorm2(ctx);
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += norm(h(i, k));
        Real tail2(ctx);
        for (std::size_t i = k + 2; i < n; ++i) tail2 += norm(h(i, k));
        if (tail2.is_zero()) continue;

        const Real xnorm = sqrt(xnorm2);
        const Complex& x0 = h(k + 1, k);
        // alpha = -e^{i arg x0} ||x||, so v_0 = x0 - alpha never cancels.
        Complex phase = x0.is_zero() ? Complex(Real(ctx, 1L)) : x0 / abs(x0);
        const Complex alpha = -(phase * xnorm);

        std::vector<Complex> v;
        v.reserve(n - k - 1);
        v.push_back(x0 - alpha);
        for (std::size_t i = k + 2; i < n; ++i) v.push_back(h(i, k));
        Real vnorm2(ctx);
        for (const Complex& z : v) vnorm2 += norm(z);
        const Real beta = Real(ctx, 2L) / vnorm2;

        // H <- (I - beta v v^H) H
        for (std::size_t j = k; j < n; ++j) {
            Complex dot(ctx);
            for (std::size_t i = 0; i < v.size(); ++i) dot += conj_mul(v[i], h(k + 1 + i, j));
            dot *= beta;
            for (std::size_t i = 0; i < v.size(); ++i) h(k + 1 + i, j) -= v[i] * dot;
        }
        // H <- H (I - beta v v^H)
        for (std::size_t r = 0; r < n; ++r) {
            Complex dot(ctx);
            for (std::size_t i = 0; i < v.size(); ++i) dot += h(r, k + 1 + i) * v[i];
            dot *= beta;
            for (std::size_t i = 0; i < v.size(); ++i) h(r, k + 1 + i) -= dot * conj(v[i]);
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex(ctx);
    }
}

struct Givens {
    Real c;
    Complex s;
};

// G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
Givens make_givens(const Complex& a, const Complex& b) {
    const PrecisionContext& ctx = a.context();
    if (b.is_zero()) return {Real(ctx, 1L), Complex(ctx)};
    const Real abs_b = abs(b);
    if (a.is_zero()) return {Real(ctx), conj(b) / abs_b};
    const Real abs_a = abs(a);
    const Real r = hypot(abs_a, abs_b);
    return {abs_a / r, (a / abs_a) * conj(b) / r};
}

// Eigenvalue of the trailing 2x2 block [[a, b], [c, d]] closest to d.
Complex wilkinson_shift(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
    const Complex half_diff = (a - d) / Real(a.context(), 2L);
    const Complex disc = sqrt(half_diff * half_diff + b * c);
    const Complex mid = (a + d) / Real(a.context(), 2L);
    Complex mu1 = mid + disc;
    Complex mu2 = mid - disc;
    return norm(mu1 - d) <= norm(mu2 - d) ? mu1 : mu2;
}

}  // namespace

std::vector<Complex> general_eigenvalues(const Matrix& input, std::size_t max_dimension) {
    if (input.rows() != input.cols()) throw ContractError("general_eigenvalues needs a square matrix");
    if (input.rows() > max_dimension)
        throw SizeError("general_eigenvalues dimension " + std::to_string(input.rows()) + " exceeds limit " +
                        std::to_string(max_dimension));

    const PrecisionContext& ctx = input.context();
    const std::size_t n = input.rows();
    Matrix h = input;
    reduce_to_hessenberg(h);

    Real eps(ctx, 1L);
    mpfr_div_2si(eps.get(), eps.get(), ctx.bits() - 1, MPFR_RNDN);
    const Real scale = h.frobenius_norm();

    std::vector<Complex> eigenvalues;
    eigenvalues.reserve(n);
    const int max_iterations = 30 * static_cast<int>(n);
    int total_iterations = 0;
    int since_deflation = 0;

    std::size_t hi = n - 1;
    for (;;) {
        if (hi == 0) {
            eigenvalues.push_back(h(0, 0));
            break;
        }
        // Active block [lo, hi] ends at the first negligible subdiagonal.
        std::size_t lo = hi;
        while (lo > 0) {
            Real local = abs(h(lo, lo)) + abs(h(lo - 1, lo - 1));
            if (local.is_zero()) local = scale;
            if (abs(h(lo, lo - 1)) <= eps * local) {
                h(lo, lo - 1) = Complex(ctx);
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eigenvalues.push_back(h(hi, hi));
            --hi;
            since_deflation = 0;
            continue;
        }

        if (total_iterations == max_iterations) {
            throw ConvergenceError("shifted QR did not converge", total_iterations,
                                   (abs(h(hi, hi - 1)) / (scale.is_zero() ? Real(ctx, 1L) : scale)).to_double());
        }
        ++total_iterations;
        ++since_deflation;

        Complex mu(ctx);
        if (since_deflation % 10 == 0) {
            // Exceptional shift breaks rare cycling.
            mu = h(hi, hi) + Complex(abs(h(hi, hi - 1)) * Real(ctx, 0.75));
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }

        for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;

        std::vector<Givens> rotations;
        rotations.reserve(hi - lo);
        for (std::size_t k = lo; k < hi; ++k) {
            Givens g = make_givens(h(k, k), h(k + 1, k));
            const Complex s_bar = conj(g.s);
            for (std::size_t j = k; j <= hi; ++j) {
                Complex x = h(k, j);
                Complex y = h(k + 1, j);
                h(k, j) = x * g.c + g.s * y;
                h(k + 1, j) = y * g.c - s_bar * x;
            }
            rotations.push_back(std::move(g));
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens& g = rotations[k - lo];
            const Complex s_bar = conj(g.s);
            const std::size_t last = std::min(k + 1, hi);
            for (std::size_t r = lo; r <= last; ++r) {
                Complex x = h(r, k);
                Complex y = h(r, k + 1);
                h(r, k) = x * g.c + y * s_bar;
                h(r, k + 1) = y * g.c - x * g.s;
            }
        }

        for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
    }

    std::stable_sort(eigenvalues.begin(), eigenvalues.end(), [](const Complex& a, const Complex& b) {
        const Real aa = a.is_zero() ? Real(a.context()) : arg(a);
        const Real ab = b.is_zero() ? Real(b.context()) : arg(b);
        if (aa != ab) return aa < ab;
        return norm(a) < norm(b);
    });
    return eigenvalues;
}

}  // namespace shortspec
