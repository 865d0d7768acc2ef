#pragma once

#include "shortspec/errors.hpp"
#include "shortspec/inversion.hpp"

#include "json.hpp"

namespace shortspec {

// {"status": "ok"|"flagged", "model": {...}, "rank": {...}, "s_spectrum": [...],
//  "pencil_eigenvalues": [...], "unit_circle_residuals": [...], "fit_residual",
//  "noise_floor", "eta_max", "noise_feasible", "freq_error_bound", "flags": {...}}
nlohmann::json report_to_json(const InversionReport& report);

// {"status": "failed", "failure_stage": ..., "error_kind": ..., "message": ...}
nlohmann::json failure_to_json(const InversionError& error);

}  // namespace shortspec
