#include "shortspec/signal.hpp"

#include "shortspec/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace shortspec {

Real SpectralModel::total_amplitude() const {
    if (components.empty()) throw InvalidModelError("empty spectral model");
    Real sum(components.front().amplitude.context());
    for (const auto& c : components) sum += c.amplitude;
    return sum;
}

Real SpectralModel::max_abs_omega() const {
    if (components.empty()) throw InvalidModelError("empty spectral model");
    Real m(components.front().omega.context());
    for (const auto& c : components) m = max(m, abs(c.omega));
    return m;
}

void validate_model(const SpectralModel& model) {
    if (model.components.empty()) throw InvalidModelError("spectral model needs at least one component");
    for (std::size_t k = 0; k < model.size(); ++k) {
        const auto& c = model.components[k];
        if (!c.amplitude.is_finite() || !c.omega.is_finite())
            throw InvalidModelError("component " + std::to_string(k) + " is not finite");
        if (c.amplitude.sign() <= 0)
            throw InvalidModelError("amplitude d_" + std::to_string(k) + " = " + c.amplitude.to_string(12) +
                                    " is not positive");
        if (k > 0 && !(model.components[k - 1].omega < c.omega))
            throw InvalidModelError("frequencies must be strictly increasing (component " + std::to_string(k) + ")");
    }
}

SpectralModel canonical(SpectralModel model) {
    std::stable_sort(model.components.begin(), model.components.end(),
                     [](const SpectralComponent& a, const SpectralComponent& b) { return a.omega < b.omega; });
    return model;
}

SampledSignal::SampledSignal(const PrecisionContext& ctx, Real delta_t, std::vector<Complex> samples)
    : ctx_(ctx), delta_t_(std::move(delta_t)), samples_(std::move(samples)) {
    if (samples_.size() < 2)
        throw SizeError("a sampled signal needs N+1 >= 2 samples, got " + std::to_string(samples_.size()));
    if (!delta_t_.is_finite() || delta_t_.sign() <= 0)
        throw ParameterError("time step must be positive and finite, got " + delta_t_.to_string(12));
    for (std::size_t n = 0; n < samples_.size(); ++n) {
        if (!samples_[n].is_finite()) throw DomainError("sample c_" + std::to_string(n) + " is not finite");
    }
}

Real SampledSignal::total_time() const { return delta_t_ * static_cast<long>(n()); }

SampledSignal synthesize(const SpectralModel& model, const Real& delta_t, std::size_t n_samples,
                         const PrecisionContext& ctx) {
    validate_model(model);
    if (n_samples < 2) throw SizeError("synthesize needs at least 2 samples, got " + std::to_string(n_samples));
    if (!delta_t.is_finite() || delta_t.sign() <= 0)
        throw ParameterError("time step must be positive and finite, got " + delta_t.to_string(12));

    const Real dt = delta_t.with_context(ctx);
    std::vector<Complex> samples;
    samples.reserve(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        samples.push_back(evaluate(model, dt * static_cast<long>(n)));
    }
    return SampledSignal(ctx, dt, std::move(samples));
}

Complex evaluate(const SpectralModel& model, const Real& t) {
    if (model.components.empty()) throw InvalidModelError("spectral model needs at least one component");
    Complex sum(t.context());
    for (const auto& c : model.components) {
        const Real phase = -(c.omega.with_context(t.context()) * t);
        sum += exp_i(phase) * c.amplitude.with_context(t.context());
    }
    return sum;
}

SampledSignal add_noise(const SampledSignal& signal, const NoiseSpec& noise) {
    if (noise.eta_max.sign() < 0 || !noise.eta_max.is_finite())
        throw ParameterError("eta_max must be non-negative, got " + noise.eta_max.to_string(12));
    if (noise.eta_max.is_zero()) return signal;

    const PrecisionContext& ctx = signal.context();
    const Real eta = noise.eta_max.with_context(ctx);
    const SplitMix64 root(noise.seed);
    std::vector<Complex> out;
    out.reserve(signal.sample_count());
    for (std::size_t n = 0; n < signal.sample_count(); ++n) {
        SplitMix64 gen = root.split(n);
        Real re = eta * (uniform01(gen, ctx) * 2L - Real(ctx, 1L));
        Real im = eta * (uniform01(gen, ctx) * 2L - Real(ctx, 1L));
        out.push_back(signal[n] + Complex(std::move(re), std::move(im)));
    }
    return SampledSignal(ctx, signal.delta_t(), std::move(out));
}

SpectralModel random_model(const RandomModelSpec& spec, SplitMix64& gen) {
    if (spec.k < 1) throw ParameterError("random model needs K >= 1");
    if (spec.min_separation < 0.0) throw ParameterError("min_separation must be non-negative");
    const PrecisionContext& ctx = wider(spec.freq_min.context(), spec.freq_max.context());
    const Real min_sep(ctx, spec.min_separation);

    std::vector<Real> omegas;
    omegas.reserve(spec.k);
    while (omegas.size() < spec.k) {
        Real w = uniform_open(gen, spec.freq_min, spec.freq_max);
        const bool clash = std::any_of(omegas.begin(), omegas.end(), [&](const Real& o) {
            return o == w || abs(o - w) < min_sep;
        });
        if (!clash) omegas.push_back(std::move(w));
    }

    std::vector<Real> amps;
    amps.reserve(spec.k);
    Real total(ctx);
    for (std::size_t k = 0; k < spec.k; ++k) {
        amps.push_back(uniform_open(gen, Real(ctx), Real(ctx, 1L)));
        total += amps.back();
    }

    SpectralModel model;
    for (std::size_t k = 0; k < spec.k; ++k) {
        model.components.push_back({amps[k] / total, std::move(omegas[k])});
    }
    return canonical(std::move(model));
}

}  // namespace shortspec
