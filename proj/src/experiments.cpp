#include "shortspec/experiments.hpp"

#include "shortspec/errors.hpp"
#include "shortspec/report_io.hpp"
#include "shortspec/signal_io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

namespace shortspec {

namespace {

Real parse_config_decimal(const std::string& text, const std::string& name, const PrecisionContext& ctx) {
    try {
        return Real(ctx, text);
    } catch (const ParseError&) {
        throw ParameterError("--" + name + ": not a decimal number: \"" + text + "\"");
    }
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::size_t SynthConfig::samples() const {
    const std::size_t kk = omegas.empty() ? k : omegas.size();
    return n_samples.value_or(2 * kk + 4);
}

SynthConfig fig1_preset() {
    SynthConfig c;
    c.digits = 85;
    c.seed = kFig1Seed;
    c.k = 10;
    c.n_samples = 14;
    c.t_total = "0.01";
    c.freq_min = "0.5";
    c.freq_max = "1.0";
    c.eta_max = kFig1EtaMax;
    return c;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) { return SplitMix64(base).split(stream).next(); }

SynthResult run_synth(const SynthConfig& config) {
    const PrecisionContext ctx(config.digits, config.guard_digits);

    SpectralModel truth;
    if (!config.omegas.empty()) {
        if (!config.amps.empty() && config.amps.size() != config.omegas.size())
            throw ParameterError("--amps must list one amplitude per frequency");
        for (std::size_t i = 0; i < config.omegas.size(); ++i) {
            Real w = parse_config_decimal(config.omegas[i], "omegas", ctx);
            Real d = config.amps.empty() ? Real(ctx, 1L) / static_cast<long>(config.omegas.size())
                                         : parse_config_decimal(config.amps[i], "amps", ctx);
            truth.components.push_back({std::move(d), std::move(w)});
        }
        truth = canonical(std::move(truth));
        try {
            validate_model(truth);
        } catch (const InvalidModelError& e) {
            throw ParameterError(e.what());
        }
    } else {
        if (config.k < 1) throw ParameterError("--k must be >= 1");
        SplitMix64 gen = SplitMix64(config.seed).split(0);
        truth = random_model({config.k, parse_config_decimal(config.freq_min, "freq-min", ctx),
                              parse_config_decimal(config.freq_max, "freq-max", ctx), 0.0},
                             gen);
    }

    const std::size_t samples = config.samples();
    if (samples < 2) throw ParameterError("--samples must be >= 2");
    if (config.dt && config.t_total) throw ParameterError("give either --dt or --t-total, not both");
    Real dt(ctx);
    if (config.dt) {
        dt = parse_config_decimal(*config.dt, "dt", ctx);
    } else {
        const Real t = parse_config_decimal(config.t_total.value_or(SynthConfig::kDefaultTotalTime), "t-total", ctx);
        dt = t / static_cast<long>(samples - 1);
    }
    if (dt.sign() <= 0) throw ParameterError("time step must be positive");

    Real eta = parse_config_decimal(config.eta_max, "eta-max", ctx);
    if (eta.sign() < 0) throw ParameterError("--eta-max must be >= 0");
    const std::uint64_t noise_seed = config.noise_seed.value_or(derive_seed(config.seed, 1));

    SampledSignal clean = synthesize(truth, dt, samples, ctx);
    SampledSignal noisy = add_noise(clean, {eta, noise_seed});
    return {ctx, std::move(truth), std::move(clean), std::move(noisy), std::move(eta), noise_seed};
}

// ---------------------------------------------------------------------------

std::vector<Real> log_time_grid(const PrecisionContext& ctx, const Real& t_min, const Real& t_max, int per_decade) {
    if (t_min.sign() <= 0 || !(t_min < t_max)) throw ParameterError("time grid needs 0 < t_min < t_max");
    if (per_decade < 1) throw ParameterError("time grid needs at least one point per decade");
    const Real lo = t_min.with_context(ctx);
    const Real hi = t_max.with_context(ctx);
    const Real decades = log10(hi / lo);
    const long steps = static_cast<long>(std::ceil(decades.to_double() * per_decade - 1e-9));
    std::vector<Real> grid;
    grid.reserve(static_cast<std::size_t>(steps) + 1);
    for (long i = 0; i < steps; ++i) {
        grid.push_back(lo * pow(Real(ctx, 10L), Real(ctx, i) / static_cast<long>(per_decade)));
    }
    grid.push_back(hi);
    return grid;
}

std::vector<ReconstructionRow> reconstruct(const SpectralModel& recovered, const SpectralModel* truth,
                                           std::span<const Real> grid) {
    std::optional<Real> scale;
    if (truth) {
        scale = Real(truth->components.front().amplitude.context());
        for (const auto& c : truth->components) *scale += abs(c.amplitude);
    }
    std::vector<ReconstructionRow> rows;
    rows.reserve(grid.size());
    for (const Real& t : grid) {
        ReconstructionRow row{t, evaluate(recovered, t), std::nullopt, std::nullopt};
        if (truth) {
            row.exact = evaluate(*truth, t);
            row.rel_diff = abs(row.recon - *row.exact) / *scale;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<Real> extrapolation_horizon(std::span<const ReconstructionRow> rows, double tolerance) {
    for (const auto& row : rows) {
        if (row.rel_diff && row.rel_diff->to_double() >= tolerance) return row.t;
    }
    return std::nullopt;
}

std::string reconstruction_csv(std::span<const ReconstructionRow> rows) {
    std::ostringstream os;
    const bool with_truth = !rows.empty() && rows.front().exact.has_value();
    os << (with_truth ? "t,exact_abs,recon_abs,abs_diff,rel_diff\n" : "t,recon_re,recon_im,recon_abs\n");
    for (const auto& row : rows) {
        os << row.t.to_string(12) << ',';
        if (with_truth) {
            os << abs(*row.exact).to_string(17) << ',' << abs(row.recon).to_string(17) << ','
               << abs(row.recon - *row.exact).to_string(12) << ',' << row.rel_diff->to_string(12) << '\n';
        } else {
            os << row.recon.re.to_string(17) << ',' << row.recon.im.to_string(17) << ','
               << abs(row.recon).to_string(17) << '\n';
        }
    }
    return os.str();
}

std::optional<Real> max_frequency_error(const SpectralModel& recovered, const SpectralModel& truth) {
    if (recovered.size() != truth.size() || truth.size() == 0) return std::nullopt;
    const SpectralModel a = canonical(recovered);
    const SpectralModel b = canonical(truth);
    Real worst(a.components.front().omega.context());
    for (std::size_t k = 0; k < a.size(); ++k) worst = max(worst, abs(a.components[k].omega - b.components[k].omega));
    return worst;
}

// ---------------------------------------------------------------------------

SweepAxis parse_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
        throw ParameterError("axis must look like name=values, got \"" + spec + "\"");
    SweepAxis axis{spec.substr(0, eq), {}};
    const std::string body = spec.substr(eq + 1);
    static const std::vector<std::string> known{"T", "K", "eta", "digits", "samples"};
    if (std::find(known.begin(), known.end(), axis.name) == known.end())
        throw ParameterError("unknown sweep axis \"" + axis.name + "\" (expected T, K, eta, digits or samples)");
    const bool integral = axis.name == "K" || axis.name == "digits" || axis.name == "samples";

    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::string cur;
        std::istringstream is(s);
        while (std::getline(is, cur, sep)) parts.push_back(cur);
        return parts;
    };

    if (body.find(':') == std::string::npos) {
        axis.values = split(body, ',');
    } else {
        const auto parts = split(body, ':');
        if (parts.size() < 2 || parts.size() > 4) throw ParameterError("axis range must be lo:hi[:count[:lin|log]]");
        const PrecisionContext ctx(40);
        Real lo(ctx), hi(ctx);
        try {
            lo = Real(ctx, parts[0]);
            hi = Real(ctx, parts[1]);
        } catch (const ParseError&) {
            throw ParameterError("axis \"" + axis.name + "\": bad range bound");
        }
        if (hi < lo) throw ParameterError("axis \"" + axis.name + "\": empty range");
        std::string spacing = parts.size() == 4 ? parts[3] : (integral ? "lin" : "log");
        if (spacing != "lin" && spacing != "log") throw ParameterError("axis spacing must be lin or log");
        long count = 0;
        if (parts.size() >= 3) {
            count = std::stol(parts[2]);
        } else if (integral) {
            count = hi.to_long() - lo.to_long() + 1;
        } else {
            throw ParameterError("axis \"" + axis.name + "\": a point count is required");
        }
        if (count < 1) throw ParameterError("axis \"" + axis.name + "\": count must be >= 1");
        if (spacing == "log" && lo.sign() <= 0) throw ParameterError("log-spaced axis needs positive bounds");
        for (long i = 0; i < count; ++i) {
            const Real frac = count == 1 ? Real(ctx) : Real(ctx, i) / (count - 1);
            Real v = spacing == "lin" ? lo + (hi - lo) * frac : lo * pow(hi / lo, frac);
            axis.values.push_back(integral ? std::to_string(v.to_long()) : v.to_string(30));
        }
    }
    if (axis.values.empty()) throw ParameterError("axis \"" + axis.name + "\" has no values");
    for (const auto& v : axis.values) {
        if (v.empty()) throw ParameterError("axis \"" + axis.name + "\" has an empty value");
    }
    return axis;
}

SweepRow run_trial(const SynthConfig& config, std::size_t trial, std::size_t rep) {
    SynthResult synth = run_synth(config);
    SweepRow row;
    row.trial = trial;
    row.rep = rep;
    row.seed = config.seed;
    row.k = synth.truth.size();
    row.n_samples = synth.signal.sample_count();
    row.t_total = synth.signal.total_time().to_string(12);
    row.eta_max = synth.eta_max.to_string(12);
    row.digits = synth.ctx.digits();

    InversionOptions options;
    if (synth.eta_max.sign() > 0) options.eta_max = synth.eta_max;
    try {
        const InversionReport report = invert(synth.signal, options);
        row.rank_detected = report.rank.k;
        row.lambda_min = report.rank.lambda_min.to_double();
        row.lambda_min_estimate =
            lambda_min_scaling_estimate(row.k, report.n, synth.signal.total_time(), synth.truth.max_abs_omega())
                .value.to_double();
        row.bound = report.freq_error_bound.to_double();
        row.feasible = report.noise_feasible;
        const std::optional<Real> err = max_frequency_error(report.model, synth.truth);
        if (err) row.max_freq_error = err->to_double();
        row.success = report.rank.k == row.k && report.clean();
        if (synth.eta_max.sign() > 0) row.within_bound = err.has_value() && *err <= report.freq_error_bound;
    } catch (const InversionError& e) {
        row.failure = e.stage() + ":" + e.kind();
        if (synth.eta_max.sign() > 0) row.within_bound = false;
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    if (config.trials < 1) throw ParameterError("--trials must be >= 1");
    // Cartesian product, first axis slowest, repetitions innermost.
    std::vector<SynthConfig> points{config.base};
    for (const SweepAxis& axis : config.axes) {
        std::vector<SynthConfig> next;
        for (const SynthConfig& p : points) {
            for (const std::string& v : axis.values) {
                SynthConfig c = p;
                try {
                    if (axis.name == "T") {
                        c.t_total = v;
                        c.dt.reset();
                    } else if (axis.name == "K") {
                        c.k = static_cast<std::size_t>(std::stoul(v));
                        c.omegas.clear();
                        c.amps.clear();
                    } else if (axis.name == "eta") {
                        c.eta_max = v;
                    } else if (axis.name == "digits") {
                        c.digits = std::stoi(v);
                    } else if (axis.name == "samples") {
                        c.n_samples = static_cast<std::size_t>(std::stoul(v));
                    }
                } catch (const std::logic_error&) {
                    throw ParameterError("axis \"" + axis.name + "\": bad value \"" + v + "\"");
                }
                next.push_back(std::move(c));
            }
        }
        points = std::move(next);
    }

    struct Job {
        SynthConfig config;
        std::size_t rep;
    };
    std::vector<Job> jobs;
    for (const SynthConfig& p : points) {
        for (std::size_t rep = 0; rep < config.trials; ++rep) {
            SynthConfig c = p;
            // The model depends on the repetition only, so it stays fixed along every axis.
            c.seed = derive_seed(config.base.seed, rep);
            c.noise_seed.reset();
            jobs.push_back({std::move(c), rep});
        }
    }

    std::vector<SweepRow> rows(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                rows[i] = run_trial(jobs[i].config, i, jobs[i].rep);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n_workers = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(jobs.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::ostringstream os;
    os << "trial,rep,seed,k,n_samples,t_total,eta_max,digits,rank_detected,lambda_min,lambda_min_estimate,"
          "max_freq_error,bound,feasible,success,within_bound,failure\n";
    for (const SweepRow& r : rows) {
        os << r.trial << ',' << r.rep << ',' << r.seed << ',' << r.k << ',' << r.n_samples << ',' << r.t_total << ','
           << r.eta_max << ',' << r.digits << ',' << r.rank_detected << ',' << fmt_double(r.lambda_min) << ','
           << fmt_double(r.lambda_min_estimate) << ','
           << (r.max_freq_error ? fmt_double(*r.max_freq_error) : std::string("nan")) << ',' << fmt_double(r.bound)
           << ',' << int(r.feasible) << ',' << int(r.success) << ','
           << (r.within_bound ? std::to_string(int(*r.within_bound)) : std::string("na")) << ',' << r.failure
           << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

SampledSignal autocorrelation_signal(std::span<const Complex> amplitudes, std::span<const Real> omegas,
                                     const Real& delta_t, std::size_t n_samples, const PrecisionContext& ctx) {
    if (amplitudes.size() != omegas.size() || amplitudes.empty())
        throw ParameterError("autocorrelation needs one amplitude per eigenfrequency");
    std::vector<Complex> samples;
    samples.reserve(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const Real t = delta_t.with_context(ctx) * static_cast<long>(n);
        Complex c(ctx);
        for (std::size_t k = 0; k < amplitudes.size(); ++k) {
            // <k|Phi(0)>^* <k|Phi(t)>
            const Complex evolved = amplitudes[k] * exp_i(-(omegas[k].with_context(ctx) * t));
            c += conj_mul(amplitudes[k], evolved);
        }
        samples.push_back(std::move(c));
    }
    return SampledSignal(ctx, delta_t.with_context(ctx), std::move(samples));
}

QuantumResult run_quantum_demo(const QuantumConfig& config) {
    const PrecisionContext ctx(config.digits);
    if (config.amps.empty() || config.amps.size() != config.omegas.size())
        throw ParameterError("quantum demo needs one amplitude per eigenfrequency");
    if (!config.phases.empty() && config.phases.size() != config.amps.size())
        throw ParameterError("--phases must list one phase per amplitude");

    const std::size_t k = config.amps.size();
    std::vector<Complex> a;
    std::vector<Real> omegas;
    Real state_norm(ctx);
    for (std::size_t i = 0; i < k; ++i) {
        const Real modulus = parse_config_decimal(config.amps[i], "amps", ctx);
        const Real phase = config.phases.empty() ? Real(ctx) : parse_config_decimal(config.phases[i], "phases", ctx);
        a.push_back(exp_i(phase) * modulus);
        omegas.push_back(parse_config_decimal(config.omegas[i], "omegas", ctx));
        state_norm += norm(a.back());
    }
    if (state_norm.sign() <= 0) throw ParameterError("quantum state has zero norm");
    const Real scale = Real(ctx, 1L) / sqrt(state_norm);
    for (Complex& z : a) z *= scale;

    SpectralModel truth;
    for (std::size_t i = 0; i < k; ++i) truth.components.push_back({norm(a[i]), omegas[i]});
    truth = canonical(std::move(truth));
    try {
        validate_model(truth);
    } catch (const InvalidModelError& e) {
        throw ParameterError(e.what());
    }

    const std::size_t samples = config.n_samples.value_or(2 * k + 4);
    if (samples < 2) throw ParameterError("--samples must be >= 2");
    const Real dt = parse_config_decimal(config.t_total, "t-total", ctx) / static_cast<long>(samples - 1);
    if (dt.sign() <= 0) throw ParameterError("--t-total must be positive");

    const SampledSignal signal = autocorrelation_signal(a, omegas, dt, samples, ctx);
    InversionReport report = invert(signal);
    std::optional<Real> err = max_frequency_error(report.model, truth);
    return {std::move(truth), std::move(report), std::move(state_norm), std::move(err)};
}

nlohmann::json QuantumResult::to_json() const {
    nlohmann::json energies_true = nlohmann::json::array(), weights_true = nlohmann::json::array();
    for (const auto& c : truth.components) {
        energies_true.push_back(c.omega.to_string());
        weights_true.push_back(c.amplitude.to_string());
    }
    nlohmann::json energies = nlohmann::json::array(), weights = nlohmann::json::array();
    for (const auto& c : report.model.components) {
        energies.push_back(c.omega.to_string());
        weights.push_back(c.amplitude.to_string());
    }
    return {{"K", truth.size()},
            {"state_norm", state_norm.to_string()},
            {"energies_true", std::move(energies_true)},
            {"weights_true", std::move(weights_true)},
            {"energies_recovered", std::move(energies)},
            {"weights_recovered", std::move(weights)},
            {"max_energy_error", max_energy_error ? max_energy_error->to_string(20) : std::string("nan")},
            {"inversion", report_to_json(report)}};
}

}  // namespace shortspec
