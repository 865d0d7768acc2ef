#include "shortspec/errors.hpp"
#include "shortspec/inversion.hpp"

#include <string>
#include <utility>

namespace shortspec {

namespace {

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const EmptyRankError*>(&e)) return "empty_rank";
    if (dynamic_cast<const RankError*>(&e)) return "rank";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
    if (dynamic_cast<const ParameterError*>(&e)) return "parameter";
    if (dynamic_cast<const SizeError*>(&e)) return "size";
    if (dynamic_cast<const ContractError*>(&e)) return "contract";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    return "error";
}

template <typename F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InversionError&) {
        throw;
    } catch (const Error& e) {
        throw InversionError(stage, error_kind(e), e.what());
    }
}

}  // namespace

InversionReport invert(const SampledSignal& signal, const InversionOptions& options) {
    const PrecisionContext& ctx = signal.context();
    Real eta = options.eta_max ? options.eta_max->with_context(ctx) : Real(ctx);
    if (eta.sign() < 0 || !eta.is_finite()) throw InversionError("options", "parameter", "eta_max must be >= 0");

    RankPolicy policy = RelativeThreshold{};
    if (options.policy) {
        policy = *options.policy;
    } else if (eta.sign() > 0) {
        policy = NoiseThreshold{eta};
    }

    PencilMatrices pencil = run_stage("build_matrices", [&] { return build_matrices(signal); });
    HermitianEig s_eig = run_stage("overlap_eig", [&] { return hermitian_eig(pencil.s); });
    RankDecision rank = run_stage("detect_rank", [&] { return detect_rank(s_eig, policy); });
    std::vector<Complex> u = run_stage("solve_pencil", [&] { return solve_pencil(pencil, s_eig, rank); });

    const std::size_t n = pencil.n;
    const Real total_time = signal.total_time();
    Real bound = frequency_error_bound(rank.k, n, rank.lambda_min, eta, total_time);

    // Noise moves u_k off the unit circle by up to |dw| dt, so the tolerance
    // widens to the frequency bound when a noise level is known.
    Real tolerance = options.unit_circle_tolerance ? options.unit_circle_tolerance->with_context(ctx)
                                                   : default_unit_circle_tolerance(ctx);
    if (!options.unit_circle_tolerance && eta.sign() > 0) tolerance = max(tolerance, bound * signal.delta_t());

    FrequencyRecovery freqs =
        run_stage("recover_frequencies", [&] { return recover_frequencies(u, signal.delta_t(), tolerance); });
    AmplitudeFit fit = run_stage("recover_amplitudes", [&] { return recover_amplitudes(signal, freqs.omegas); });

    SpectralModel model;
    for (std::size_t k = 0; k < freqs.omegas.size(); ++k) {
        model.components.push_back({fit.amplitudes[k], freqs.omegas[k]});
    }
    Real omega_max(ctx), amplitude_sum(ctx);
    for (const auto& c : model.components) {
        omega_max = max(omega_max, abs(c.omega));
        amplitude_sum += abs(c.amplitude);
    }

    // What noise, rounding and the certified frequency uncertainty can explain:
    // 10 x (eta sqrt(2(N+1)) + sqrt(N+1) (max|c| 10^-D + sum|d| T bound)).
    // A pencil estimate is not a maximum-likelihood fit, so for noisy input
    // the last term dominates; for noiseless input the flag catches a wrong rank.
    Real max_sample(ctx);
    for (const Complex& c : signal.samples()) max_sample = max(max_sample, abs(c));
    const long rows = static_cast<long>(signal.sample_count());
    Real noise_floor = (eta * sqrt(Real(ctx, 2L * rows)) +
                        sqrt(Real(ctx, rows)) *
                            (max_sample * pow10(ctx, -ctx.digits()) + amplitude_sum * total_time * bound)) *
                       10L;

    InversionFlags flags;
    flags.off_circle = freqs.off_circle;
    flags.negative_amplitude = fit.negative;
    flags.residual_above_noise = fit.residual > noise_floor;
    const bool feasible = noise_feasibility(rank.lambda_min, n, eta);

    InversionReport report{
        std::move(model),
        std::move(rank),
        s_eig.eigenvalues,
        std::move(u),
        std::move(freqs.unit_circle_residuals),
        std::move(tolerance),
        std::move(fit.residual),
        std::move(noise_floor),
        std::move(fit.max_imag),
        std::move(eta),
        feasible,
        std::move(bound),
        Real(ctx),
        flags,
        n,
        signal.delta_t(),
    };
    report.lambda_min_estimate = lambda_min_scaling_estimate(report.rank.k, n, total_time, omega_max).value;
    return report;
}

ScalingEstimate lambda_min_scaling_estimate(std::size_t k, std::size_t n, const Real& total_time,
                                            const Real& omega_max) {
    if (k == 0) throw ParameterError("scaling estimate needs K >= 1");
    const Real x = total_time * omega_max;
    Real value = pow(x, static_cast<long>(2 * (k - 1))) * static_cast<long>(k * n);
    return {std::move(value), abs(x) < Real(x.context(), 1L)};
}

bool noise_feasibility(const Real& lambda_min, std::size_t n, const Real& eta_max) {
    return lambda_min >= eta_max * static_cast<long>(4 * n);
}

Real frequency_error_bound(std::size_t k, std::size_t n, const Real& lambda_min, const Real& eta_max,
                           const Real& total_time) {
    if (lambda_min.sign() <= 0) throw DomainError("frequency error bound needs lambda_min > 0");
    if (total_time.sign() <= 0) throw DomainError("frequency error bound needs T > 0");
    const long coeff = static_cast<long>(2 * k * n * n);
    return eta_max * coeff / lambda_min / total_time;
}

}  // namespace shortspec
