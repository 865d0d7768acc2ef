#include "shortspec/cli.hpp"

#include "shortspec/dft.hpp"
#include "shortspec/errors.hpp"
#include "shortspec/experiments.hpp"
#include "shortspec/report_io.hpp"
#include "shortspec/signal_io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>

namespace shortspec {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Flags shared by synth and sweep. Unset flags leave the base configuration alone.
struct SynthFlags {
    std::optional<int> digits;
    std::optional<int> guard;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> noise_seed;
    std::optional<std::size_t> k;
    std::optional<std::size_t> samples;
    std::optional<std::string> dt;
    std::optional<std::string> t_total;
    std::optional<std::string> freq_min;
    std::optional<std::string> freq_max;
    std::vector<std::string> omegas;
    std::vector<std::string> amps;
    std::optional<std::string> eta_max;
    std::optional<std::string> preset;

    void attach(CLI::App& app) {
        app.add_option("--digits", digits, "Significant decimal digits (default 100 or $SHORTSPEC_DIGITS)");
        app.add_option("--guard", guard, "Guard digits added to the working precision");
        app.add_option("--seed", seed, "Seed for the random model");
        app.add_option("--noise-seed", noise_seed, "Seed for the injected noise (derived from --seed if absent)");
        app.add_option("--k", k, "Number of spectral components of the random model");
        app.add_option("--samples", samples, "Number of samples N+1 (default 2K+4)");
        auto* o_dt = app.add_option("--dt", dt, "Time step");
        auto* o_t = app.add_option("--t-total", t_total, "Total observation time T = N dt (default 0.01)");
        o_dt->excludes(o_t);
        app.add_option("--freq-min", freq_min, "Lower end of the random frequency interval");
        app.add_option("--freq-max", freq_max, "Upper end of the random frequency interval");
        app.add_option("--omegas", omegas, "Explicit frequencies (comma separated)")->delimiter(',');
        app.add_option("--amps", amps, "Explicit amplitudes matching --omegas (default equal weights)")
            ->delimiter(',');
        app.add_option("--eta-max", eta_max, "Maximum noise amplitude per real/imaginary part");
        app.add_option("--preset", preset, "Named configuration")->check(CLI::IsMember({"fig1"}));
    }

    SynthConfig build(std::optional<int> env_digits) const {
        SynthConfig c = preset ? fig1_preset() : SynthConfig{};
        if (!preset && env_digits) c.digits = *env_digits;
        if (digits) c.digits = *digits;
        if (guard) c.guard_digits = *guard;
        if (seed) c.seed = *seed;
        if (noise_seed) c.noise_seed = *noise_seed;
        if (k) c.k = *k;
        if (samples) c.n_samples = *samples;
        if (dt) {
            c.dt = *dt;
            c.t_total.reset();
        }
        if (t_total) {
            c.t_total = *t_total;
            c.dt.reset();
        }
        if (freq_min) c.freq_min = *freq_min;
        if (freq_max) c.freq_max = *freq_max;
        if (!omegas.empty()) c.omegas = omegas;
        if (!amps.empty()) c.amps = amps;
        if (eta_max) c.eta_max = *eta_max;
        return c;
    }
};

std::optional<int> env_digits() {
    const char* raw = std::getenv("SHORTSPEC_DIGITS");
    if (!raw || !*raw) return std::nullopt;
    try {
        std::size_t used = 0;
        const int v = std::stoi(raw, &used);
        if (used == std::string(raw).size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ParameterError(std::string("SHORTSPEC_DIGITS is not an integer: \"") + raw + "\"");
}

std::optional<RankPolicy> parse_policy(const std::string& text) {
    if (text == "auto") return std::nullopt;
    if (text.rfind("k=", 0) == 0) {
        try {
            std::size_t used = 0;
            const long k = std::stol(text.substr(2), &used);
            if (used == text.size() - 2 && k >= 1) return ExplicitRank{static_cast<std::size_t>(k)};
        } catch (const std::logic_error&) {
        }
        throw ParameterError("--rank-policy k=<n> needs a positive integer");
    }
    if (text.rfind("threshold=", 0) == 0) {
        const PrecisionContext ctx(40);
        try {
            Real tau(ctx, text.substr(10));
            if (tau.sign() > 0) return AbsoluteThreshold{tau};
        } catch (const ParseError&) {
        }
        throw ParameterError("--rank-policy threshold=<dec> needs a positive decimal");
    }
    throw ParameterError("--rank-policy must be auto, k=<n> or threshold=<dec>");
}

void emit(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
    if (path) {
        write_text_file(*path, text);
    } else {
        out << text;
    }
}

int cmd_synth(const SynthFlags& flags, const std::string& out_path, std::optional<std::string> model_out,
              std::ostream& out) {
    const SynthResult r = run_synth(flags.build(env_digits()));
    json sig = signal_to_json(r.signal);
    sig["noise"] = {{"eta_max", r.eta_max.to_string()}, {"seed", r.noise_seed}};
    write_text_file(out_path, sig.dump(2) + "\n");
    const fs::path model_path = model_out ? fs::path(*model_out) : fs::path(out_path).replace_extension(".model.json");
    save_model(r.truth, model_path);

    out << "K       " << r.truth.size() << '\n'
        << "samples " << r.signal.sample_count() << '\n'
        << "T       " << r.signal.total_time().to_string(20) << '\n'
        << "dt      " << r.signal.delta_t().to_string(20) << '\n'
        << "sum_d   " << r.truth.total_amplitude().to_string(20) << '\n'
        << "eta_max " << r.eta_max.to_string(20) << '\n'
        << "signal  " << out_path << '\n'
        << "model   " << model_path.string() << '\n';
    return kExitOk;
}

struct InvertFlags {
    std::string signal_path;
    std::string rank_policy = "auto";
    std::optional<std::string> eta_max;
    std::optional<std::string> out;
    std::optional<std::string> recon_out;
    std::optional<std::string> truth;
    std::string t_max = "1e8";
    int per_decade = 20;  // the 1% error oscillates; 10 per decade can step over the first crossing
};

int cmd_invert(const InvertFlags& flags, std::ostream& out) {
    const json raw = read_json_file(flags.signal_path);
    const SampledSignal signal = signal_from_json(raw);
    const PrecisionContext& ctx = signal.context();

    InversionOptions options;
    options.policy = parse_policy(flags.rank_policy);
    if (flags.eta_max) {
        try {
            options.eta_max = Real(ctx, *flags.eta_max);
        } catch (const ParseError&) {
            throw ParameterError("--eta-max is not a decimal number");
        }
    } else if (raw.contains("noise") && raw["noise"].contains("eta_max")) {
        options.eta_max = parse_decimal_field(raw["noise"]["eta_max"], "noise.eta_max", ctx);
    }
    if (options.eta_max && options.eta_max->sign() < 0) throw ParameterError("--eta-max must be >= 0");
    if (options.eta_max && options.eta_max->is_zero()) options.eta_max.reset();

    std::optional<SpectralModel> truth;
    if (flags.truth) truth = load_model(*flags.truth, ctx);
    // Validate the grid before running the (possibly long) inversion.
    std::optional<std::vector<Real>> grid;
    if (flags.recon_out) {
        Real t_max(ctx);
        try {
            t_max = Real(ctx, flags.t_max);
        } catch (const ParseError&) {
            throw ParameterError("--t-max is not a decimal number");
        }
        grid = log_time_grid(ctx, signal.delta_t(), t_max, flags.per_decade);
    }

    InversionReport report = [&] {
        try {
            return invert(signal, options);
        } catch (const InversionError& e) {
            json fail = failure_to_json(e);
            // Nothing survives a noise threshold: no eigenvalue of S reaches 4 N eta.
            if (e.kind() == "empty_rank" && options.eta_max) fail["noise_feasible"] = false;
            emit(flags.out, fail.dump(2) + "\n", out);
            throw;
        }
    }();

    json j = report_to_json(report);
    if (truth) {
        const std::optional<Real> err = max_frequency_error(report.model, *truth);
        j["max_frequency_error"] = err ? json(err->to_string(20)) : json(nullptr);
    }
    if (grid) {
        const auto rows = reconstruct(report.model, truth ? &*truth : nullptr, *grid);
        write_text_file(*flags.recon_out, reconstruction_csv(rows));
        if (truth) {
            const std::optional<Real> horizon = extrapolation_horizon(rows);
            j["extrapolation_horizon"] = horizon ? json(horizon->to_string(6)) : json(nullptr);
        }
    }
    emit(flags.out, j.dump(2) + "\n", out);
    return report.clean() ? kExitOk : kExitInversion;
}

int cmd_dft(const std::string& signal_path, const std::optional<std::string>& out_path, int sig_digits,
            std::ostream& out) {
    const SampledSignal signal = load_signal(signal_path);
    const DftSpectrum spectrum = dft(signal);
    emit(out_path, spectrum_csv(spectrum, sig_digits), out);
    if (out_path) {
        out << "dominant_frequency " << dominant_frequency(spectrum).to_string(sig_digits) << '\n'
            << "bin0_modulus       " << abs(spectrum.bin_amplitudes.front()).to_string(sig_digits) << '\n';
    }
    return kExitOk;
}

int cmd_sweep(const SynthFlags& flags, const std::vector<std::string>& axes, std::size_t trials, unsigned jobs,
              const std::optional<std::string>& out_path, std::ostream& out) {
    SweepConfig config;
    config.base = flags.build(env_digits());
    for (const auto& a : axes) config.axes.push_back(parse_axis(a));
    config.trials = trials;
    config.jobs = jobs;
    const auto rows = run_sweep(config);
    emit(out_path, sweep_csv(rows), out);
    return kExitOk;
}

int cmd_quantum(QuantumConfig config, std::optional<int> digits, const std::optional<std::string>& out_path,
                std::ostream& out) {
    if (digits) {
        config.digits = *digits;
    } else if (auto env = env_digits()) {
        config.digits = *env;
    }
    const QuantumResult r = run_quantum_demo(config);
    emit(out_path, r.to_json().dump(2) + "\n", out);
    return r.report.clean() ? kExitOk : kExitInversion;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"High-precision harmonic inversion of short time signals", "shortspec"};
    app.require_subcommand(1);

    SynthFlags synth_flags;
    std::string synth_out;
    std::optional<std::string> model_out;
    CLI::App* synth = app.add_subcommand("synth", "Synthesise a (noisy) sampled signal and its ground-truth model");
    synth_flags.attach(*synth);
    synth->add_option("--out", synth_out, "Signal JSON path")->required();
    synth->add_option("--model-out", model_out, "Ground-truth model JSON path (default <out>.model.json)");

    InvertFlags inv;
    CLI::App* invert_cmd = app.add_subcommand("invert", "Recover frequencies and amplitudes from a signal file");
    invert_cmd->add_option("signal", inv.signal_path, "Signal JSON path")->required();
    invert_cmd->add_option("--rank-policy", inv.rank_policy, "auto | k=<n> | threshold=<dec>");
    invert_cmd->add_option("--eta-max", inv.eta_max, "Noise amplitude hint (default: value recorded in the file)");
    invert_cmd->add_option("--out", inv.out, "Report JSON path (default stdout)");
    invert_cmd->add_option("--recon-out", inv.recon_out, "Reconstruction CSV path");
    invert_cmd->add_option("--truth", inv.truth, "Ground-truth model JSON for error columns");
    invert_cmd->add_option("--t-max", inv.t_max, "End of the logarithmic reconstruction grid")->capture_default_str();
    invert_cmd->add_option("--points-per-decade", inv.per_decade, "Reconstruction grid density")
        ->capture_default_str();

    std::string dft_signal;
    std::optional<std::string> dft_out;
    int dft_digits = 20;
    CLI::App* dft_cmd = app.add_subcommand("dft", "Discrete Fourier spectrum of a signal file");
    dft_cmd->add_option("signal", dft_signal, "Signal JSON path")->required();
    dft_cmd->add_option("--out", dft_out, "Spectrum CSV path (default stdout)");
    dft_cmd->add_option("--print-digits", dft_digits, "Significant digits in the CSV")->capture_default_str();

    SynthFlags sweep_flags;
    std::vector<std::string> axes;
    std::size_t trials = 1;
    unsigned jobs = 1;
    std::optional<std::string> sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "Run seeded trials over parameter axes and tabulate them");
    sweep_flags.attach(*sweep);
    sweep->add_option("--axis", axes, "name=values, e.g. T=1e-3:1e-2:8, K=2:4, eta=1e-90,1e-80")->required();
    sweep->add_option("--trials", trials, "Repetitions per axis point")->capture_default_str();
    sweep->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

    QuantumConfig qc;
    qc.amps = {"1", "1"};
    qc.omegas = {"0.5", "1.0"};
    std::optional<int> q_digits;
    std::optional<std::string> q_out;
    CLI::App* quantum = app.add_subcommand("quantum-demo", "Recover eigenfrequencies from a state autocorrelation");
    quantum->add_option("--amps", qc.amps, "|a_k| (normalised internally)")->delimiter(',')->capture_default_str();
    quantum->add_option("--phases", qc.phases, "arg a_k in radians")->delimiter(',');
    quantum->add_option("--omegas", qc.omegas, "Eigenfrequencies E_k / hbar")->delimiter(',')->capture_default_str();
    quantum->add_option("--t-total", qc.t_total, "Observation time")->capture_default_str();
    quantum->add_option("--samples", qc.n_samples, "Number of samples (default 2K+4)");
    quantum->add_option("--digits", q_digits, "Significant decimal digits");
    quantum->add_option("--out", q_out, "Report JSON path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*synth) return cmd_synth(synth_flags, synth_out, model_out, out);
        if (*invert_cmd) return cmd_invert(inv, out);
        if (*dft_cmd) return cmd_dft(dft_signal, dft_out, dft_digits, out);
        if (*sweep) return cmd_sweep(sweep_flags, axes, trials, jobs, sweep_out, out);
        if (*quantum) return cmd_quantum(qc, q_digits, q_out, out);
    } catch (const InversionError& e) {
        err << "inversion failed at " << e.stage() << " (" << e.kind() << "): " << e.what() << '\n';
        return kExitInversion;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "malformed input: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

}  // namespace shortspec
