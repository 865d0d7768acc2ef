#pragma once

// Finite Fourier-series signals c(t) = sum_k d_k exp(-i w_k t), their
// equidistant samples c_n = c(n dt), and bounded complex noise.

#include "shortspec/hiprec.hpp"
#include "shortspec/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace shortspec {

struct SpectralComponent {
    Real amplitude;  // d_k
    Real omega;      // angular frequency, radians per unit time
};

struct SpectralModel {
    std::vector<SpectralComponent> components;

    std::size_t size() const noexcept { return components.size(); }
    Real total_amplitude() const;
    Real max_abs_omega() const;
};

// Throws InvalidModelError unless K >= 1, every d_k > 0 and the omegas are
// strictly increasing.
void validate_model(const SpectralModel& model);

// Sorted by omega; does not validate.
SpectralModel canonical(SpectralModel model);

class SampledSignal {
public:
    SampledSignal(const PrecisionContext& ctx, Real delta_t, std::vector<Complex> samples);

    const PrecisionContext& context() const noexcept { return ctx_; }
    const Real& delta_t() const noexcept { return delta_t_; }
    std::span<const Complex> samples() const noexcept { return samples_; }
    const Complex& operator[](std::size_t n) const { return samples_[n]; }

    // N; the signal holds N + 1 samples c_0..c_N.
    std::size_t n() const noexcept { return samples_.size() - 1; }
    std::size_t sample_count() const noexcept { return samples_.size(); }
    // T = N dt
    Real total_time() const;

private:
    PrecisionContext ctx_;
    Real delta_t_;
    std::vector<Complex> samples_;
};

struct NoiseSpec {
    Real eta_max;
    std::uint64_t seed = 0;
};

// c_n = sum_k d_k exp(-i w_k n dt), n = 0..n_samples-1.
SampledSignal synthesize(const SpectralModel& model, const Real& delta_t, std::size_t n_samples,
                         const PrecisionContext& ctx);

// Model value at an arbitrary time t, possibly far outside the sampled window.
Complex evaluate(const SpectralModel& model, const Real& t);

// Adds eta_n with Re, Im independently uniform in [-eta_max, eta_max]. Sample n
// draws from substream n of the seed, so the result is independent of
// evaluation order.
SampledSignal add_noise(const SampledSignal& signal, const NoiseSpec& noise);

struct RandomModelSpec {
    std::size_t k = 1;
    Real freq_min;
    Real freq_max;
    // Minimum pairwise |w_i - w_j|; zero means "distinct at working precision".
    double min_separation = 0.0;
};

// Frequencies i.i.d. uniform in (freq_min, freq_max), redrawn until pairwise
// distinct; amplitudes uniform in (0, 1) then normalised to sum 1.
SpectralModel random_model(const RandomModelSpec& spec, SplitMix64& gen);

}  // namespace shortspec
