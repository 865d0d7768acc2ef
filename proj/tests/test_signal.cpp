#include "shortspec/errors.hpp"
#include "shortspec/signal.hpp"
#include "shortspec/signal_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace shortspec;

namespace {

SpectralModel model_of(const PrecisionContext& ctx, std::initializer_list<std::pair<const char*, const char*>> dw) {
    SpectralModel m;
    for (const auto& [d, w] : dw) m.components.push_back({Real(ctx, d), Real(ctx, w)});
    return m;
}

bool close(const Complex& a, const Complex& b, long e) {
    return abs(a - b) <= pow10(a.context(), -e);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("shortspec_test_" + name);
}

SpectralModel random_three(const PrecisionContext& ctx, std::uint64_t seed) {
    SplitMix64 gen(seed);
    return random_model({3, Real(ctx, "0.5"), Real(ctx, "1.0"), 0.0}, gen);
}

}  // namespace

TEST(Synthesize, ConstantSignal) {
    const PrecisionContext ctx(30);
    const SampledSignal s = synthesize(model_of(ctx, {{"1", "0"}}), Real(ctx, "0.37"), 4, ctx);
    ASSERT_EQ(s.sample_count(), 4u);
    for (const Complex& c : s.samples()) EXPECT_EQ(c, Complex(Real(ctx, 1L)));
}

TEST(Synthesize, SingleComponentByHand) {
    const PrecisionContext ctx(40);
    const SampledSignal s = synthesize(model_of(ctx, {{"2", "1"}}), Real(ctx, "0.1"), 3, ctx);
    EXPECT_EQ(s[0], Complex(Real(ctx, 2L)));
    EXPECT_TRUE(close(s[1], exp_i(Real(ctx, "-0.1")) * Real(ctx, 2L), 39));
    EXPECT_TRUE(close(s[2], exp_i(Real(ctx, "-0.2")) * Real(ctx, 2L), 39));
    EXPECT_EQ(s.total_time(), Real(ctx, "0.1") * 2L);
}

TEST(Synthesize, RejectsInvalidModels) {
    const PrecisionContext ctx(30);
    const Real dt(ctx, "0.1");
    EXPECT_THROW(synthesize(SpectralModel{}, dt, 4, ctx), InvalidModelError);
    EXPECT_THROW(synthesize(model_of(ctx, {{"-1", "0.5"}}), dt, 4, ctx), InvalidModelError);
    EXPECT_THROW(synthesize(model_of(ctx, {{"1", "0.7"}, {"1", "0.5"}}), dt, 4, ctx), InvalidModelError);
    EXPECT_THROW(synthesize(model_of(ctx, {{"1", "0.5"}, {"1", "0.5"}}), dt, 4, ctx), InvalidModelError);
    EXPECT_THROW(synthesize(model_of(ctx, {{"1", "0.5"}}), dt, 1, ctx), SizeError);
    EXPECT_THROW(synthesize(model_of(ctx, {{"1", "0.5"}}), Real(ctx), 4, ctx), ParameterError);
}

TEST(Synthesize, ConjugateSymmetryInTime) {
    const PrecisionContext ctx(50);
    const SpectralModel m = random_three(ctx, 7);
    const Real dt(ctx, "0.013");
    const SampledSignal s = synthesize(m, dt, 6, ctx);
    for (std::size_t n = 0; n < 6; ++n) {
        EXPECT_TRUE(close(evaluate(m, -(dt * static_cast<long>(n))), conj(s[n]), 48)) << n;
    }
}

TEST(Synthesize, Linearity) {
    const PrecisionContext ctx(50);
    const SpectralModel a = model_of(ctx, {{"0.3", "0.5"}, {"0.2", "0.9"}});
    const SpectralModel b = model_of(ctx, {{"0.5", "0.7"}});
    SpectralModel both = a;
    both.components.push_back(b.components.front());
    both = canonical(both);
    const Real dt(ctx, "0.01");
    const SampledSignal sa = synthesize(a, dt, 5, ctx), sb = synthesize(b, dt, 5, ctx), sab = synthesize(both, dt, 5, ctx);
    for (std::size_t n = 0; n < 5; ++n) EXPECT_TRUE(close(sab[n], sa[n] + sb[n], 48));
}

TEST(Synthesize, ModulusBoundedByAmplitudeSum) {
    const PrecisionContext ctx(40);
    const SpectralModel m = random_three(ctx, 11);
    const SampledSignal s = synthesize(m, Real(ctx, "0.5"), 12, ctx);
    const Real sum = m.total_amplitude();
    EXPECT_TRUE(abs(abs(s[0]) - sum) <= pow10(ctx, -39));
    EXPECT_TRUE(s[0].im.is_zero());
    for (const Complex& c : s.samples()) EXPECT_TRUE(abs(c) <= sum + pow10(ctx, -39));
}

TEST(Evaluate, FarExtrapolation) {
    const PrecisionContext ctx(40);
    EXPECT_EQ(evaluate(model_of(ctx, {{"1", "0"}}), Real(ctx, "1e6")), Complex(Real(ctx, 1L)));
    const Complex z = evaluate(model_of(ctx, {{"1", "0.731"}}), Real(ctx, "123456.789"));
    EXPECT_TRUE(abs(abs(z) - Real(ctx, 1L)) <= pow10(ctx, -38));
}

TEST(RandomModel, NormalisedDistinctInInterval) {
    const PrecisionContext ctx(40);
    SplitMix64 gen(3);
    const SpectralModel m = random_model({10, Real(ctx, "0.5"), Real(ctx, "1.0"), 0.0}, gen);
    ASSERT_EQ(m.size(), 10u);
    EXPECT_NO_THROW(validate_model(m));
    EXPECT_TRUE(abs(m.total_amplitude() - Real(ctx, 1L)) <= pow10(ctx, -38));
    for (const auto& c : m.components) {
        EXPECT_GT(c.omega, Real(ctx, "0.5"));
        EXPECT_LT(c.omega, Real(ctx, "1.0"));
    }
}

TEST(Noise, ZeroNoiseIsIdentity) {
    const PrecisionContext ctx(30);
    const SampledSignal s = synthesize(random_three(ctx, 1), Real(ctx, "0.01"), 8, ctx);
    const SampledSignal t = add_noise(s, {Real(ctx), 99});
    for (std::size_t n = 0; n < s.sample_count(); ++n) EXPECT_EQ(s[n], t[n]);
}

TEST(Noise, BoundedPerComponent) {
    const PrecisionContext ctx(40);
    const SampledSignal s = synthesize(random_three(ctx, 1), Real(ctx, "0.01"), 50, ctx);
    const Real eta(ctx, "1e-10");
    const SampledSignal t = add_noise(s, {eta, 42});
    bool moved = false;
    for (std::size_t n = 0; n < s.sample_count(); ++n) {
        const Complex d = t[n] - s[n];
        EXPECT_LE(abs(d.re), eta);
        EXPECT_LE(abs(d.im), eta);
        moved = moved || !d.is_zero();
    }
    EXPECT_TRUE(moved);
}

TEST(Noise, DeterministicPerSeed) {
    const PrecisionContext ctx(40);
    const SampledSignal s = synthesize(random_three(ctx, 1), Real(ctx, "0.01"), 6, ctx);
    const Real eta(ctx, "1e-20");
    const SampledSignal a = add_noise(s, {eta, 5}), b = add_noise(s, {eta, 5}), c = add_noise(s, {eta, 6});
    bool differs = false;
    for (std::size_t n = 0; n < s.sample_count(); ++n) {
        EXPECT_EQ(a[n], b[n]);
        differs = differs || !(a[n] == c[n]);
    }
    EXPECT_TRUE(differs);
}

TEST(Noise, RejectsNegativeAmplitude) {
    const PrecisionContext ctx(30);
    const SampledSignal s = synthesize(random_three(ctx, 1), Real(ctx, "0.01"), 6, ctx);
    EXPECT_THROW(add_noise(s, {Real(ctx, "-1e-10"), 1}), ParameterError);
}

TEST(SignalIo, RoundTripIsExact) {
    const PrecisionContext ctx(85);
    const SampledSignal s = add_noise(synthesize(random_three(ctx, 5), Real(ctx, "0.01") / 13L, 14, ctx),
                                      {Real(ctx, "1e-84"), 9});
    const auto path = temp_file("roundtrip.json");
    save_signal(s, path);
    const SampledSignal back = load_signal(path);
    EXPECT_EQ(back.context().digits(), 85);
    EXPECT_EQ(back.delta_t(), s.delta_t());
    ASSERT_EQ(back.sample_count(), s.sample_count());
    for (std::size_t n = 0; n < s.sample_count(); ++n) {
        EXPECT_EQ(back[n], s[n]);
        EXPECT_EQ(back[n].re.to_string(), s[n].re.to_string());
    }
    std::filesystem::remove(path);
}

TEST(SignalIo, EightyFiveDigitValueSurvives) {
    const PrecisionContext ctx(85);
    const std::string v = "0.9876543210987654321098765432109876543210987654321098765432109876543210987654321098765";
    const SampledSignal s(ctx, Real(ctx, "0.5"), {Complex(Real(ctx, v)), Complex(Real(ctx, 1L))});
    const SampledSignal back = signal_from_json(signal_to_json(s));
    EXPECT_EQ(back[0].re.to_string(85), s[0].re.to_string(85));
    EXPECT_EQ(back[0].re.to_string(85), "9.876543210987654321098765432109876543210987654321098765432109876543210987654321098765e-1");
}

TEST(SignalIo, MissingFieldNamesIt) {
    nlohmann::json j = {{"precision_digits", 30}, {"samples", {{{"re", "1"}, {"im", "0"}}, {{"re", "1"}, {"im", "0"}}}}};
    try {
        signal_from_json(j);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "dt");
    }
    j["dt"] = "0.1";
    j["samples"][1]["re"] = "one";
    try {
        signal_from_json(j);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "samples[1].re");
    }
}

TEST(SignalIo, UnreadableFileIsIoError) {
    EXPECT_THROW(load_signal("/nonexistent/dir/signal.json"), IoError);
    const auto path = temp_file("garbage.json");
    std::ofstream(path) << "{ not json";
    EXPECT_THROW(load_signal(path), ParseError);
    std::filesystem::remove(path);
}

TEST(ModelIo, RoundTrip) {
    const PrecisionContext ctx(60);
    const SpectralModel m = random_three(ctx, 21);
    const SpectralModel back = model_from_json(model_to_json(m), ctx);
    ASSERT_EQ(back.size(), m.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
        EXPECT_EQ(back.components[k].amplitude, m.components[k].amplitude);
        EXPECT_EQ(back.components[k].omega, m.components[k].omega);
    }
}
