#include "shortspec/report_io.hpp"

#include "shortspec/signal_io.hpp"

namespace shortspec {

using nlohmann::json;

namespace {

json strings(const std::vector<Real>& values) {
    json out = json::array();
    for (const Real& v : values) out.push_back(v.to_string());
    return out;
}

}  // namespace

json report_to_json(const InversionReport& report) {
    json eigs = json::array();
    for (const Complex& u : report.pencil_eigenvalues) eigs.push_back({{"re", u.re.to_string()}, {"im", u.im.to_string()}});

    const RankDecision& rank = report.rank;
    return {
        {"status", report.clean() ? "ok" : "flagged"},
        {"model", model_to_json(report.model)},
        {"n", report.n},
        {"dt", report.delta_t.to_string()},
        {"rank",
         {{"K", rank.k},
          {"policy", rank.policy},
          {"lambda_min", rank.lambda_min.to_string()},
          {"lambda_max", rank.lambda_max.to_string()},
          {"threshold", rank.threshold.to_string()},
          {"retained_indices", rank.retained_indices}}},
        {"s_spectrum", strings(report.s_spectrum)},
        {"pencil_eigenvalues", std::move(eigs)},
        {"unit_circle_residuals", strings(report.unit_circle_residuals)},
        {"unit_circle_tolerance", report.unit_circle_tolerance.to_string()},
        {"fit_residual", report.fit_residual.to_string()},
        {"noise_floor", report.noise_floor.to_string()},
        {"max_amplitude_imag", report.max_amplitude_imag.to_string()},
        {"eta_max", report.eta_max.to_string()},
        {"noise_feasible", report.noise_feasible},
        {"freq_error_bound", report.freq_error_bound.to_string()},
        {"lambda_min_estimate", report.lambda_min_estimate.to_string()},
        {"flags",
         {{"off_circle", report.flags.off_circle},
          {"negative_amplitude", report.flags.negative_amplitude},
          {"residual_above_noise", report.flags.residual_above_noise}}},
    };
}

json failure_to_json(const InversionError& error) {
    return {{"status", "failed"},
            {"failure_stage", error.stage()},
            {"error_kind", error.kind()},
            {"message", error.what()}};
}

}  // namespace shortspec
