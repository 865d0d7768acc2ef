#include "shortspec/errors.hpp"
#include "shortspec/linalg.hpp"
#include "shortspec/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace shortspec;

namespace {

Complex cplx(const PrecisionContext& ctx, const char* re, const char* im = "0") {
    return Complex(Real(ctx, re), Real(ctx, im));
}

Matrix random_matrix(const PrecisionContext& ctx, std::size_t rows, std::size_t cols, std::uint64_t seed) {
    SplitMix64 gen(seed);
    Matrix a(ctx, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a(i, j) = Complex(uniform01(gen, ctx) * 2L - Real(ctx, 1L), uniform01(gen, ctx) * 2L - Real(ctx, 1L));
    return a;
}

// Orthonormal columns by Gram-Schmidt (two passes), independent of the library.
Matrix random_unitary(const PrecisionContext& ctx, std::size_t n, std::uint64_t seed) {
    Matrix q = random_matrix(ctx, n, n, seed);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                Complex dot(ctx);
                for (std::size_t i = 0; i < n; ++i) dot += conj(q(i, p)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= q(i, p) * dot;
            }
        }
        Real nrm(ctx);
        for (std::size_t i = 0; i < n; ++i) nrm += norm(q(i, j));
        nrm = sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return q;
}

Matrix hermitian_from_spectrum(const PrecisionContext& ctx, const std::vector<Real>& lambda, std::uint64_t seed) {
    const Matrix q = random_unitary(ctx, lambda.size(), seed);
    Matrix d(ctx, lambda.size(), lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) d(i, i) = Complex(lambda[i]);
    Matrix a = q * d * q.adjoint();
    // symmetrise exactly so the input satisfies the Hermitian contract
    for (std::size_t i = 0; i < a.rows(); ++i) {
        a(i, i).im = Real(ctx);
        for (std::size_t j = i + 1; j < a.cols(); ++j) a(j, i) = conj(a(i, j));
    }
    return a;
}

Complex det(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    Complex sum(a.context());
    for (std::size_t j = 0; j < n; ++j) {
        Matrix minor(a.context(), n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(i - 1, cc++) = a(i, c);
        const Complex term = a(0, j) * det(minor);
        if (j % 2 == 0) sum += term; else sum -= term;
    }
    return sum;
}

bool contains(const std::vector<Complex>& values, const Complex& z, const Real& tol) {
    return std::any_of(values.begin(), values.end(), [&](const Complex& v) { return abs(v - z) <= tol; });
}

}  // namespace

TEST(HermitianEig, Identity) {
    const PrecisionContext ctx(30);
    const HermitianEig e = hermitian_eig(Matrix::identity(ctx, 2));
    EXPECT_EQ(e.eigenvalues[0], Real(ctx, 1L));
    EXPECT_EQ(e.eigenvalues[1], Real(ctx, 1L));
}

TEST(HermitianEig, DiagonalKeepsBasis) {
    const PrecisionContext ctx(30);
    Matrix a(ctx, 2, 2);
    a(0, 0) = cplx(ctx, "3");
    a(1, 1) = cplx(ctx, "2");
    const HermitianEig e = hermitian_eig(a);
    EXPECT_EQ(e.eigenvalues[0], Real(ctx, 2L));
    EXPECT_EQ(e.eigenvalues[1], Real(ctx, 3L));
    EXPECT_EQ(abs(e.eigenvectors(1, 0)), Real(ctx, 1L));
    EXPECT_EQ(abs(e.eigenvectors(0, 1)), Real(ctx, 1L));
}

TEST(HermitianEig, TwoByTwoByHand) {
    const PrecisionContext ctx(40);
    Matrix a(ctx, 2, 2);
    a(0, 0) = cplx(ctx, "2");
    a(0, 1) = cplx(ctx, "1", "-1");
    a(1, 0) = cplx(ctx, "1", "1");
    a(1, 1) = cplx(ctx, "3");
    const HermitianEig e = hermitian_eig(a);
    EXPECT_LE(abs(e.eigenvalues[0] - Real(ctx, 1L)), pow10(ctx, -39));
    EXPECT_LE(abs(e.eigenvalues[1] - Real(ctx, 4L)), pow10(ctx, -39));
}

TEST(HermitianEig, RejectsNonHermitianAndOversize) {
    const PrecisionContext ctx(30);
    Matrix a = Matrix::identity(ctx, 2);
    a(0, 1) = cplx(ctx, "1");
    EXPECT_THROW(hermitian_eig(a), ContractError);
    EXPECT_THROW(hermitian_eig(Matrix::identity(ctx, 5), 4), SizeError);
}

TEST(HermitianEig, ResidualOrthonormalityTrace) {
    const PrecisionContext ctx(50);
    for (std::size_t n : {3u, 6u, 13u}) {
        Matrix a = random_matrix(ctx, n, n, n);
        a = a + a.adjoint();
        const HermitianEig e = hermitian_eig(a);
        const Real tol = pow10(ctx, -ctx.digits() + ctx.guard_digits());
        const Real scale = a.frobenius_norm();

        Real trace(ctx), sum(ctx);
        for (std::size_t i = 0; i < n; ++i) {
            trace += a(i, i).re;
            sum += e.eigenvalues[i];
            if (i > 0) EXPECT_LE(e.eigenvalues[i - 1], e.eigenvalues[i]);
        }
        EXPECT_LE(abs(trace - sum), tol * scale);

        const Matrix av = a * e.eigenvectors;
        for (std::size_t j = 0; j < n; ++j) {
            Real r(ctx);
            for (std::size_t i = 0; i < n; ++i) r += norm(av(i, j) - e.eigenvectors(i, j) * e.eigenvalues[j]);
            EXPECT_LE(sqrt(r), tol * scale) << "n=" << n << " j=" << j;
        }
        const Matrix gram = e.eigenvectors.adjoint() * e.eigenvectors - Matrix::identity(ctx, n);
        EXPECT_LE(gram.max_abs(), tol);
    }
}

TEST(HermitianEig, ProductMatchesCofactorDeterminant) {
    const PrecisionContext ctx(40);
    for (std::size_t n = 1; n <= 4; ++n) {
        Matrix a = random_matrix(ctx, n, n, 100 + n);
        a = a + a.adjoint();
        const HermitianEig e = hermitian_eig(a);
        Real prod(ctx, 1L);
        for (const Real& l : e.eigenvalues) prod *= l;
        const Complex d = det(a);
        EXPECT_LE(abs(prod - d.re), pow10(ctx, -35) * max(Real(ctx, 1L), abs(d.re))) << n;
        EXPECT_LE(abs(d.im), pow10(ctx, -35));
    }
}

TEST(HermitianEig, ResolvesTinyEigenvaluesOfDenseMatrix) {
    // Graded spectrum spanning 78 orders of magnitude, hidden by a random rotation.
    const PrecisionContext ctx(100);
    const std::vector<Real> lambda{Real(ctx, "4.07e-78"), Real(ctx, "3e-40"), Real(ctx, "2e-12"), Real(ctx, "1.5")};
    const Matrix a = hermitian_from_spectrum(ctx, lambda, 77);
    const HermitianEig e = hermitian_eig(a);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        EXPECT_LE(abs(e.eigenvalues[i] - lambda[i]) / lambda[i], pow10(ctx, -15)) << i;
    }
}

TEST(GeneralEig, Diagonal) {
    const PrecisionContext ctx(30);
    Matrix a(ctx, 2, 2);
    a(0, 0) = cplx(ctx, "0.5", "0.25");
    a(1, 1) = cplx(ctx, "-2", "1");
    const auto u = general_eigenvalues(a);
    ASSERT_EQ(u.size(), 2u);
    EXPECT_TRUE(contains(u, a(0, 0), pow10(ctx, -29)));
    EXPECT_TRUE(contains(u, a(1, 1), pow10(ctx, -29)));
}

TEST(GeneralEig, RotationHasImaginaryPair) {
    const PrecisionContext ctx(30);
    Matrix a(ctx, 2, 2);
    a(0, 1) = cplx(ctx, "1");
    a(1, 0) = cplx(ctx, "-1");
    const auto u = general_eigenvalues(a);
    EXPECT_TRUE(contains(u, cplx(ctx, "0", "1"), pow10(ctx, -28)));
    EXPECT_TRUE(contains(u, cplx(ctx, "0", "-1"), pow10(ctx, -28)));
    // sorted by argument: -pi/2 before +pi/2
    EXPECT_LT(u[0].im, u[1].im);
}

TEST(GeneralEig, CompanionMatrixRoots) {
    const PrecisionContext ctx(50);
    const Complex r1 = exp_i(Real(ctx, "-0.05")), r2 = exp_i(Real(ctx, "-0.07"));
    // z^2 - (r1 + r2) z + r1 r2
    Matrix c(ctx, 2, 2);
    c(0, 0) = r1 + r2;
    c(0, 1) = Complex(ctx) - r1 * r2;
    c(1, 0) = cplx(ctx, "1");
    const auto u = general_eigenvalues(c);
    EXPECT_TRUE(contains(u, r1, pow10(ctx, -45)));
    EXPECT_TRUE(contains(u, r2, pow10(ctx, -45)));
}

TEST(GeneralEig, SimilarityInvariance) {
    const PrecisionContext ctx(60);
    const std::size_t n = 6;
    const Matrix a = random_matrix(ctx, n, n, 5);
    const Matrix q = random_unitary(ctx, n, 6);
    // Well-conditioned similarity: unitary times a mild diagonal scaling.
    Matrix d(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = Complex(Real(ctx, static_cast<long>(i + 1)));
    Matrix dinv(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) dinv(i, i) = Complex(Real(ctx, 1L) / static_cast<long>(i + 1));
    const Matrix p = q * d, pinv = dinv * q.adjoint();
    const auto u1 = general_eigenvalues(a);
    const auto u2 = general_eigenvalues(pinv * a * p);
    ASSERT_EQ(u1.size(), n);
    for (const Complex& z : u1) EXPECT_TRUE(contains(u2, z, pow10(ctx, -50)));
}

TEST(Lstsq, IdentityReturnsRhs) {
    const PrecisionContext ctx(30);
    const std::vector<Complex> b{cplx(ctx, "1", "2"), cplx(ctx, "-3"), cplx(ctx, "0", "0.5")};
    const LeastSquares ls = lstsq(Matrix::identity(ctx, 3), b);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(abs(ls.x[i] - b[i]), pow10(ctx, -29));
    EXPECT_LE(ls.residual_norm, pow10(ctx, -29));
}

TEST(Lstsq, ConsistentOverdeterminedSystem) {
    const PrecisionContext ctx(50);
    const Matrix a = random_matrix(ctx, 9, 4, 8);
    const std::vector<Complex> x0{cplx(ctx, "1"), cplx(ctx, "-0.5", "2"), cplx(ctx, "0", "3"), cplx(ctx, "1e-10")};
    const std::vector<Complex> b = a * std::span<const Complex>(x0);
    const LeastSquares ls = lstsq(a, b);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(abs(ls.x[i] - x0[i]), pow10(ctx, -45));
}

TEST(Lstsq, HandComputedResidual) {
    const PrecisionContext ctx(40);
    Matrix a(ctx, 2, 1);
    a(0, 0) = cplx(ctx, "1");
    a(1, 0) = cplx(ctx, "1");
    const LeastSquares ls = lstsq(a, std::vector<Complex>{cplx(ctx, "0"), cplx(ctx, "2")});
    EXPECT_LE(abs(ls.x[0] - cplx(ctx, "1")), pow10(ctx, -39));
    EXPECT_LE(abs(ls.residual_norm - sqrt(Real(ctx, 2L))), pow10(ctx, -39));
}

TEST(Lstsq, ResidualOrthogonalToColumns) {
    const PrecisionContext ctx(50);
    const Matrix a = random_matrix(ctx, 10, 3, 12);
    const Matrix bm = random_matrix(ctx, 10, 1, 13);
    std::vector<Complex> b;
    for (std::size_t i = 0; i < 10; ++i) b.push_back(bm(i, 0));
    const LeastSquares ls = lstsq(a, b);
    std::vector<Complex> r = a * std::span<const Complex>(ls.x);
    for (std::size_t i = 0; i < 10; ++i) r[i] -= b[i];
    const std::vector<Complex> g = a.adjoint() * std::span<const Complex>(r);
    const Real tol = pow10(ctx, -ctx.digits() + ctx.guard_digits());
    EXPECT_LE(vector_norm(g), tol * a.frobenius_norm() * vector_norm(b));
    EXPECT_LE(abs(vector_norm(r) - ls.residual_norm), pow10(ctx, -45));
}

TEST(Lstsq, RankDeficiencyNamesColumn) {
    const PrecisionContext ctx(30);
    Matrix a(ctx, 3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        a(i, 0) = Complex(Real(ctx, static_cast<long>(i + 1)));
        a(i, 1) = a(i, 0) * Real(ctx, 2L);
    }
    try {
        lstsq(a, std::vector<Complex>(3, cplx(ctx, "1")));
        FAIL() << "expected RankError";
    } catch (const RankError& e) {
        EXPECT_EQ(e.column(), 1u);
    }
}
