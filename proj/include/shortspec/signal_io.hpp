#pragma once

// JSON serialisation of signals and spectral models. Every number is written
// as a decimal string that reads back to the identical binary value.
//
//   signal: {"precision_digits": 85, "dt": "7.69e-4",
//            "samples": [{"re": "1", "im": "0"}, ...]}
//   model:  {"components": [{"d": "0.1", "omega": "0.73"}, ...]}

#include "shortspec/signal.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace shortspec {

nlohmann::json signal_to_json(const SampledSignal& signal);
SampledSignal signal_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const SpectralModel& model);
// Decoded at ctx. Structure is checked; d_k > 0 and ordering are not.
SpectralModel model_from_json(const nlohmann::json& j, const PrecisionContext& ctx);

void save_signal(const SampledSignal& signal, const std::filesystem::path& path);
SampledSignal load_signal(const std::filesystem::path& path);

void save_model(const SpectralModel& model, const std::filesystem::path& path);
SpectralModel load_model(const std::filesystem::path& path, const PrecisionContext& ctx);

// Shared helpers for other JSON producers.
Real parse_decimal_field(const nlohmann::json& j, const std::string& field, const PrecisionContext& ctx);
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace shortspec
