#include "shortspec/signal_io.hpp"

#include "shortspec/errors.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace shortspec {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path.empty() ? "<root>" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

}  // namespace

Real parse_decimal_field(const json& j, const std::string& field, const PrecisionContext& ctx) {
    if (!j.is_string()) throw ParseError(field, "expected a decimal string");
    try {
        Real value(ctx, j.get<std::string>());
        if (!value.is_finite()) throw ParseError(field, "value is not finite");
        return value;
    } catch (const ParseError& e) {
        if (e.field() == field) throw;
        throw ParseError(field, "not a decimal number: \"" + j.get<std::string>() + "\"");
    }
}

json signal_to_json(const SampledSignal& signal) {
    json samples = json::array();
    for (const Complex& c : signal.samples()) {
        samples.push_back({{"re", c.re.to_string()}, {"im", c.im.to_string()}});
    }
    return {{"precision_digits", signal.context().digits()},
            {"dt", signal.delta_t().to_string()},
            {"samples", std::move(samples)}};
}

SampledSignal signal_from_json(const json& j) {
    const json& digits = require(j, "precision_digits", "");
    if (!digits.is_number_integer()) throw ParseError("precision_digits", "expected an integer");
    PrecisionContext ctx = [&] {
        try {
            return PrecisionContext(digits.get<int>());
        } catch (const ParameterError& e) {
            throw ParseError("precision_digits", e.what());
        }
    }();

    Real dt = parse_decimal_field(require(j, "dt", ""), "dt", ctx);
    const json& raw = require(j, "samples", "");
    if (!raw.is_array()) throw ParseError("samples", "expected an array");

    std::vector<Complex> samples;
    samples.reserve(raw.size());
    for (std::size_t n = 0; n < raw.size(); ++n) {
        const std::string path = "samples[" + std::to_string(n) + "]";
        Real re = parse_decimal_field(require(raw[n], "re", path), path + ".re", ctx);
        Real im = parse_decimal_field(require(raw[n], "im", path), path + ".im", ctx);
        samples.emplace_back(std::move(re), std::move(im));
    }
    if (samples.size() < 2) throw ParseError("samples", "need at least 2 samples");
    if (dt.sign() <= 0) throw ParseError("dt", "time step must be positive");
    return SampledSignal(ctx, std::move(dt), std::move(samples));
}

json model_to_json(const SpectralModel& model) {
    json comps = json::array();
    for (const auto& c : model.components) {
        comps.push_back({{"d", c.amplitude.to_string()}, {"omega", c.omega.to_string()}});
    }
    return {{"components", std::move(comps)}};
}

SpectralModel model_from_json(const json& j, const PrecisionContext& ctx) {
    const json& raw = require(j, "components", "");
    if (!raw.is_array()) throw ParseError("components", "expected an array");
    if (raw.empty()) throw ParseError("components", "need at least one component");
    SpectralModel model;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const std::string path = "components[" + std::to_string(k) + "]";
        Real d = parse_decimal_field(require(raw[k], "d", path), path + ".d", ctx);
        Real w = parse_decimal_field(require(raw[k], "omega", path), path + ".omega", ctx);
        model.components.push_back({std::move(d), std::move(w)});
    }
    return model;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

void save_signal(const SampledSignal& signal, const std::filesystem::path& path) {
    write_text_file(path, signal_to_json(signal).dump(2) + "\n");
}

SampledSignal load_signal(const std::filesystem::path& path) { return signal_from_json(read_json_file(path)); }

void save_model(const SpectralModel& model, const std::filesystem::path& path) {
    write_text_file(path, model_to_json(model).dump(2) + "\n");
}

SpectralModel load_model(const std::filesystem::path& path, const PrecisionContext& ctx) {
    return model_from_json(read_json_file(path), ctx);
}

}  // namespace shortspec
