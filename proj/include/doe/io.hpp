#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "doe/design.hpp"
#include "doe/effects.hpp"
#include "doe/screening.hpp"
#include "doe/simulate.hpp"

namespace doe {

// CSV conventions: comma-separated, LF line endings, header row of factor
// names. Coded levels are written as integers -1/0/1; on input the tokens
// "L"/"H" are also accepted for -1/+1. Factor level sets are inferred per
// column: a column containing 0 is three-level {-1,0,+1}, otherwise
// two-level {-1,+1}.

// Design CSV (no response column).
DesignMatrix parse_design_csv(std::istream& in);
DesignMatrix read_design_csv(const std::filesystem::path& path);
std::string design_to_csv(const DesignMatrix& design);

// Results CSV: design columns plus one response column. Factor columns are
// all columns except the named response. Responses are written with a fixed
// number of decimals (canonical form: 1).
ExperimentData parse_results_csv(std::istream& in, std::string_view response_name = "Resp");
ExperimentData read_results_csv(const std::filesystem::path& path,
                                std::string_view response_name = "Resp");
std::string results_to_csv(const ExperimentData& data, int decimals = 1);

// Label sidecar JSON: { "factor": { "-1": "batch 1", "1": "batch 2" } }.
// Returns "" when no factor carries labels. apply_labels attaches parsed
// labels onto matching factors.
std::string labels_to_json(const DesignMatrix& design);
void apply_labels_json(DesignMatrix& design, std::istream& in);

// Conventional sidecar path for a design CSV: "<stem>.labels.json".
std::filesystem::path label_sidecar_path(const std::filesystem::path& csv_path);

// Model config JSON:
//   { "intercept": 100, "main": {"X": 10}, "interactions":
//     [{"a": "X", "b": "B", "coef": 3}], "sd": 3, "round": 1, "seed": 3001 }
// Every key is optional; omitted keys keep SimModel defaults.
SimModel parse_model_json(std::istream& in);
SimModel read_model_json(const std::filesystem::path& path);

// Screening report serialization: JSON with keys effects[], active[],
// threshold_used, warnings[] (effect fields: target, mean_difference,
// half_effect, mean_low, mean_high, n_low, n_high), and a plain-text
// summary table.
std::string report_to_json(const ScreeningReport& report);
std::string report_summary_text(const ScreeningReport& report);

// Whole-file helpers. Writes are all-or-nothing: content is assembled in
// memory first, then written in one pass. Failures throw IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Fixed-point decimal formatting (locale-independent), used for CSV
// responses and SVG coordinates.
std::string format_fixed(double value, int decimals);

}  // namespace doe
