#include "shortspec/errors.hpp"
#include "shortspec/inversion.hpp"

#include <algorithm>
#include <string>

namespace shortspec {

PencilMatrices build_matrices(const SampledSignal& signal) {
    if (signal.sample_count() < 2)
        throw SizeError("harmonic inversion needs N+1 >= 2 samples, got " + std::to_string(signal.sample_count()));
    const PrecisionContext& ctx = signal.context();
    const std::size_t n = signal.n();

    // c_{-m} = conj(c_m); c_0 enters S on the diagonal, so only its real part
    // is used, keeping S exactly Hermitian when c_0 carries complex noise.
    auto c = [&](long m) -> Complex {
        if (m == 0) return Complex(signal[0].re);
        if (m > 0) return signal[static_cast<std::size_t>(m)];
        return conj(signal[static_cast<std::size_t>(-m)]);
    };

    PencilMatrices out{Matrix(ctx, n, n), Matrix(ctx, n, n), n};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const long d = static_cast<long>(j) - static_cast<long>(i);
            out.s(i, j) = c(d);
            out.u(i, j) = c(d + 1);
        }
    }
    return out;
}

std::string describe(const RankPolicy& policy) {
    struct Visitor {
        std::string operator()(const ExplicitRank& p) const { return "k=" + std::to_string(p.k); }
        std::string operator()(const AbsoluteThreshold& p) const { return "threshold=" + p.tau.to_string(6); }
        std::string operator()(const NoiseThreshold& p) const { return "noise(eta_max=" + p.eta_max.to_string(6) + ")"; }
        std::string operator()(const RelativeThreshold&) const { return "relative"; }
    };
    return std::visit(Visitor{}, policy);
}

RankDecision detect_rank(const HermitianEig& s_eig, const RankPolicy& policy) {
    const std::vector<Real>& lambda = s_eig.eigenvalues;  // ascending
    const std::size_t n = lambda.size();
    if (n == 0) throw SizeError("detect_rank: empty spectrum");
    const PrecisionContext& ctx = lambda.front().context();
    const Real& lambda_max = lambda.back();

    std::size_t first_retained = n;  // retained = [first_retained, n)
    Real threshold(ctx);

    if (const auto* p = std::get_if<ExplicitRank>(&policy)) {
        if (p->k == 0) throw ParameterError("explicit rank must be >= 1");
        if (p->k > n)
            throw ParameterError("explicit rank K=" + std::to_string(p->k) + " exceeds matrix dimension N=" +
                                 std::to_string(n));
        first_retained = n - p->k;
        threshold = first_retained > 0 ? max(lambda[first_retained - 1], Real(ctx)) : Real(ctx);
        if (!(lambda[first_retained] > threshold)) {
            throw RankError("explicit rank K=" + std::to_string(p->k) + " retains eigenvalue " +
                                lambda[first_retained].to_string(8) + " not above " + threshold.to_string(8),
                            first_retained);
        }
    } else {
        if (const auto* a = std::get_if<AbsoluteThreshold>(&policy)) {
            if (a->tau.sign() < 0 || !a->tau.is_finite()) throw ParameterError("rank threshold must be >= 0");
            threshold = a->tau.with_context(ctx);
        } else if (const auto* e = std::get_if<NoiseThreshold>(&policy)) {
            if (e->eta_max.sign() < 0 || !e->eta_max.is_finite()) throw ParameterError("eta_max must be >= 0");
            threshold = e->eta_max.with_context(ctx) * static_cast<long>(4 * n);
        } else {
            threshold = lambda_max * pow10(ctx, -(ctx.digits() - ctx.guard_digits() - 5));
        }
        while (first_retained > 0 && lambda[first_retained - 1] > threshold) --first_retained;
        if (first_retained == n) {
            throw EmptyRankError("no eigenvalue of S exceeds the rank threshold " + threshold.to_string(8) +
                                 " (largest " + lambda_max.to_string(8) + ")");
        }
    }

    RankDecision out{n - first_retained, lambda[first_retained], lambda_max, threshold, {}, describe(policy)};
    for (std::size_t i = first_retained; i < n; ++i) out.retained_indices.push_back(i);
    return out;
}

std::vector<Complex> solve_pencil(const PencilMatrices& pencil, const HermitianEig& s_eig, const RankDecision& rank) {
    if (rank.k == 0 || rank.retained_indices.size() != rank.k) throw ParameterError("solve_pencil needs K >= 1");
    const PrecisionContext& ctx = pencil.s.context();
    const std::size_t n = pencil.n;
    const std::size_t k = rank.k;

    // W = V_r L_r^{-1/2}
    Matrix w(ctx, n, k);
    for (std::size_t col = 0; col < k; ++col) {
        const std::size_t idx = rank.retained_indices[col];
        const Real& lambda = s_eig.eigenvalues[idx];
        if (lambda.sign() <= 0)
            throw RankError("retained eigenvalue " + lambda.to_string(8) + " is not positive", idx);
        const Real inv_sqrt = Real(ctx, 1L) / sqrt(lambda);
        for (std::size_t r = 0; r < n; ++r) w(r, col) = s_eig.eigenvectors(r, idx) * inv_sqrt;
    }
    const Matrix reduced = w.adjoint() * (pencil.u * w);
    return general_eigenvalues(reduced);
}

Real default_unit_circle_tolerance(const PrecisionContext& ctx) { return pow10(ctx, -(ctx.digits() / 2)); }

FrequencyRecovery recover_frequencies(std::span<const Complex> u, const Real& delta_t, const Real& tolerance) {
    if (delta_t.sign() <= 0) throw ParameterError("recover_frequencies needs dt > 0");
    struct Entry {
        Real omega;
        Real residual;
    };
    std::vector<Entry> entries;
    entries.reserve(u.size());
    FrequencyRecovery out;
    for (const Complex& z : u) {
        Real omega = -arg(z) / delta_t;
        Real residual = abs(abs(z) - Real(z.context(), 1L));
        if (residual > tolerance) out.off_circle = true;
        entries.push_back({std::move(omega), std::move(residual)});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.omega < b.omega; });
    for (auto& e : entries) {
        out.omegas.push_back(std::move(e.omega));
        out.unit_circle_residuals.push_back(std::move(e.residual));
    }
    return out;
}

AmplitudeFit recover_amplitudes(const SampledSignal& signal, std::span<const Real> omegas) {
    if (omegas.empty()) throw ParameterError("recover_amplitudes needs at least one frequency");
    if (omegas.size() > signal.sample_count())
        throw ParameterError("more frequencies (" + std::to_string(omegas.size()) + ") than samples (" +
                             std::to_string(signal.sample_count()) + ")");
    const PrecisionContext& ctx = signal.context();
    const std::size_t rows = signal.sample_count();
    Matrix v(ctx, rows, omegas.size());
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        // Column k: powers of z_k = exp(-i w_k dt), evaluated directly per row.
        const Real step = -(omegas[k].with_context(ctx) * signal.delta_t());
        for (std::size_t row = 0; row < rows; ++row) v(row, k) = exp_i(step * static_cast<long>(row));
    }
    LeastSquares ls = lstsq(v, signal.samples());

    AmplitudeFit out{{}, std::move(ls.residual_norm), Real(ctx), false};
    for (Complex& d : ls.x) {
        out.max_imag = max(out.max_imag, abs(d.im));
        if (d.re.sign() <= 0) out.negative = true;
        out.amplitudes.push_back(std::move(d.re));
    }
    return out;
}

}  // namespace shortspec
