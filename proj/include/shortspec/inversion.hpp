#pragma once

// Harmonic inversion of a sampled finite Fourier series.
//
// From samples c_0..c_N the engine builds the N x N Toeplitz pencil
//   S[i][j] = c_{j-i},   U[i][j] = c_{j-i+1},   c_{-n} = conj(c_n),
// whose generalized eigenvalues u_k = exp(-i w_k dt) carry the frequencies.
// S has rank K (the number of components) and is singular for N > K, so the
// pencil is projected onto the K retained eigenvectors of S:
//   S = V L V^H,  W = V_r L_r^{-1/2},  u_k = eig(W^H U W).
// Amplitudes then follow from a Vandermonde least-squares fit.

#include "shortspec/hiprec.hpp"
#include "shortspec/linalg.hpp"
#include "shortspec/signal.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace shortspec {

struct PencilMatrices {
    Matrix s;
    Matrix u;
    std::size_t n;  // matrix dimension; the signal supplies n + 1 samples
};

PencilMatrices build_matrices(const SampledSignal& signal);

// Rank policies. NoiseThreshold uses 4 N eta_max; RelativeThreshold uses
// lambda_max * 10^-(digits - guard - 5).
struct ExplicitRank {
    std::size_t k;
};
struct AbsoluteThreshold {
    Real tau;
};
struct NoiseThreshold {
    Real eta_max;
};
struct RelativeThreshold {};

using RankPolicy = std::variant<ExplicitRank, AbsoluteThreshold, NoiseThreshold, RelativeThreshold>;

std::string describe(const RankPolicy& policy);

struct RankDecision {
    std::size_t k;
    Real lambda_min;  // smallest retained eigenvalue of S
    Real lambda_max;
    Real threshold;   // every retained eigenvalue > threshold >= every discarded one
    std::vector<std::size_t> retained_indices;  // into the ascending spectrum
    std::string policy;
};

RankDecision detect_rank(const HermitianEig& s_eig, const RankPolicy& policy);

// K eigenvalues of the pencil restricted to the retained subspace of S.
std::vector<Complex> solve_pencil(const PencilMatrices& pencil, const HermitianEig& s_eig, const RankDecision& rank);

struct FrequencyRecovery {
    std::vector<Real> omegas;                 // ascending
    std::vector<Real> unit_circle_residuals;  // ||u_k| - 1|, aligned with omegas
    bool off_circle = false;                  // some residual exceeded the tolerance
};

// w_k = -arg(u_k) / dt on the principal branch (valid for |w| dt < pi).
FrequencyRecovery recover_frequencies(std::span<const Complex> u, const Real& delta_t, const Real& tolerance);

// Default unit-circle tolerance 10^-(digits/2).
Real default_unit_circle_tolerance(const PrecisionContext& ctx);

struct AmplitudeFit {
    std::vector<Real> amplitudes;  // real parts of the least-squares solution
    Real residual;                 // ||V d - c||_2
    Real max_imag;                 // largest dropped imaginary part
    bool negative = false;         // some d_k <= 0
};

// Least squares V d = c over all N + 1 samples, V[n][k] = exp(-i w_k n dt).
AmplitudeFit recover_amplitudes(const SampledSignal& signal, std::span<const Real> omegas);

struct InversionOptions {
    std::optional<RankPolicy> policy;  // default: noise threshold if eta_max > 0, else relative
    std::optional<Real> eta_max;       // noise amplitude hint
    std::optional<Real> unit_circle_tolerance;
};

struct InversionFlags {
    bool off_circle = false;            // some |u_k| departs from 1 beyond tolerance
    bool negative_amplitude = false;
    bool residual_above_noise = false;  // fit cannot reproduce the samples to the noise level
};

struct InversionReport {
    SpectralModel model;
    RankDecision rank;
    std::vector<Real> s_spectrum;  // ascending eigenvalues of S
    std::vector<Complex> pencil_eigenvalues;
    std::vector<Real> unit_circle_residuals;
    Real unit_circle_tolerance;
    Real fit_residual;
    Real noise_floor;  // residual explained by noise, rounding and the frequency bound
    Real max_amplitude_imag;
    Real eta_max;
    bool noise_feasible;
    Real freq_error_bound;
    Real lambda_min_estimate;
    InversionFlags flags;
    std::size_t n;
    Real delta_t;

    bool clean() const noexcept {
        return noise_feasible && !flags.off_circle && !flags.negative_amplitude && !flags.residual_above_noise;
    }
};

// Full two-stage inversion. Errors are rethrown as InversionError tagged
// with the failing stage.
InversionReport invert(const SampledSignal& signal, const InversionOptions& options = {});

// lambda_min ~ K N (f T Omega)^{2(K-1)} with f = 1; meaningful only for T Omega << 1.
struct ScalingEstimate {
    Real value;
    bool short_signal;  // T Omega < 1
};
ScalingEstimate lambda_min_scaling_estimate(std::size_t k, std::size_t n, const Real& total_time, const Real& omega_max);

// lambda_min >= 4 N eta_max
bool noise_feasibility(const Real& lambda_min, std::size_t n, const Real& eta_max);

// (2 K N^2 / lambda_min) eta_max / T, the bound on |w~_k - w_k|.
Real frequency_error_bound(std::size_t k, std::size_t n, const Real& lambda_min, const Real& eta_max,
                           const Real& total_time);

}  // namespace shortspec
