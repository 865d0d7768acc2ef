#pragma once

// Experiment harness shared by the command-line tool and the acceptance
// suite: signal synthesis from a configuration, the short-window
// reproduction preset, reconstruction curves, parameter sweeps and the
// quantum autocorrelation demo.

#include "shortspec/hiprec.hpp"
#include "shortspec/inversion.hpp"
#include "shortspec/signal.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shortspec {

struct SynthConfig {
    int digits = 100;
    int guard_digits = PrecisionContext::kDefaultGuard;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> noise_seed;  // derived from seed when absent
    std::size_t k = 3;
    std::optional<std::size_t> n_samples;     // default 2K + 4
    std::optional<std::string> dt;            // exactly one of dt / t_total; default t_total
    std::optional<std::string> t_total;
    std::string freq_min = "0.5";
    std::string freq_max = "1.0";
    // Explicit model; overrides random generation when non-empty.
    std::vector<std::string> omegas;
    std::vector<std::string> amps;
    std::string eta_max = "0";

    static constexpr const char* kDefaultTotalTime = "0.01";

    std::size_t samples() const;
};

// K = 10 frequencies uniform in (0.5, 1.0), sum d_k = 1, N + 1 = 14 samples,
// T = 0.01, 85 digits, eta_max = 1e-84.
SynthConfig fig1_preset();
inline constexpr std::uint64_t kFig1Seed = 118;
inline constexpr const char* kFig1EtaMax = "1e-84";

struct SynthResult {
    PrecisionContext ctx;
    SpectralModel truth;
    SampledSignal clean;
    SampledSignal signal;  // clean + noise
    Real eta_max;
    std::uint64_t noise_seed;
};

SynthResult run_synth(const SynthConfig& config);

// Per-stream seeds derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// ---------------------------------------------------------------------------
// Reconstruction / extrapolation

// Logarithmic grid t_min .. t_max (inclusive) with `per_decade` points per decade.
std::vector<Real> log_time_grid(const PrecisionContext& ctx, const Real& t_min, const Real& t_max, int per_decade);

struct ReconstructionRow {
    Real t;
    Complex recon;
    std::optional<Complex> exact;
    std::optional<Real> rel_diff;  // |recon - exact| / sum_k |d_k| of the truth
};

std::vector<ReconstructionRow> reconstruct(const SpectralModel& recovered, const SpectralModel* truth,
                                           std::span<const Real> grid);

// First grid time whose relative difference reaches `tolerance`.
std::optional<Real> extrapolation_horizon(std::span<const ReconstructionRow> rows, double tolerance = 0.01);

std::string reconstruction_csv(std::span<const ReconstructionRow> rows);

// max_k |w~_k - w_k| for equal-size sorted models, nullopt otherwise.
std::optional<Real> max_frequency_error(const SpectralModel& recovered, const SpectralModel& truth);

// ---------------------------------------------------------------------------
// Sweeps

struct SweepAxis {
    std::string name;  // T | K | eta | digits | samples
    std::vector<std::string> values;
};

// "T=1e-3:1e-2:8" (log spaced), "K=2:4" (integers), "eta=1e-90,1e-80",
// "digits=60:100:3:lin".
SweepAxis parse_axis(const std::string& spec);

struct SweepConfig {
    SynthConfig base;
    std::vector<SweepAxis> axes;
    std::size_t trials = 1;  // repetitions per axis point
    unsigned jobs = 1;
};

struct SweepRow {
    std::size_t trial = 0;
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    std::size_t k = 0;
    std::size_t n_samples = 0;
    std::string t_total;
    std::string eta_max;
    int digits = 0;
    std::size_t rank_detected = 0;
    double lambda_min = 0.0;
    double lambda_min_estimate = 0.0;
    std::optional<double> max_freq_error;
    double bound = 0.0;
    bool feasible = false;
    bool success = false;
    std::optional<bool> within_bound;  // only defined for eta_max > 0
    std::string failure;               // failing stage, empty on success
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);
SweepRow run_trial(const SynthConfig& config, std::size_t trial, std::size_t rep);
std::string sweep_csv(std::span<const SweepRow> rows);

// ---------------------------------------------------------------------------
// Quantum autocorrelation demo

struct QuantumConfig {
    std::vector<std::string> amps;    // |a_k|
    std::vector<std::string> phases;  // arg a_k, radians; zero when empty
    std::vector<std::string> omegas;  // eigenfrequencies E_k / hbar
    std::string t_total = "0.01";
    std::optional<std::size_t> n_samples;
    int digits = 100;
};

// c_n = <Phi(0)|Phi(n dt)> = sum_k conj(a_k) a_k exp(-i w_k n dt) for
// |Phi(t)> = sum_k a_k exp(-i w_k t)|k>.
SampledSignal autocorrelation_signal(std::span<const Complex> amplitudes, std::span<const Real> omegas,
                                     const Real& delta_t, std::size_t n_samples, const PrecisionContext& ctx);

struct QuantumResult {
    SpectralModel truth;  // weights |a_k|^2 after normalisation
    InversionReport report;
    Real state_norm;      // sum |a_k|^2 before normalisation
    std::optional<Real> max_energy_error;
    nlohmann::json to_json() const;
};

QuantumResult run_quantum_demo(const QuantumConfig& config);

}  // namespace shortspec
