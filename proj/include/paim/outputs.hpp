#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "paim/harness.hpp"
#include "paim/run_record.hpp"

namespace paim {

// Squared radius of the level set holding `mass` of a d-dimensional Gaussian
// (chi-square quantile); 4.6052 for d = 2 at 0.90.
double ellipse_radius_squared(std::size_t dim, double mass = 0.90);

// Locale-independent, 17 significant digits.
std::string format_real(double v);

nlohmann::json params_json(const RunRecord& record);
nlohmann::json summary_json(const SummaryReport& report);

// Writes samples.csv, activity.csv, params.json, summary.json, ellipses.csv.
// I/O failures surface as std::runtime_error naming the file.
void emit_outputs(const RunRecord& record, const SummaryReport& report, const std::filesystem::path& dir);

}  // namespace paim
