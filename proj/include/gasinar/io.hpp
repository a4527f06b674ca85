#ifndef GASINAR_IO_HPP
#define GASINAR_IO_HPP

#include <filesystem>
#include <string>

#include "json.hpp"

#include "gasinar/diagnostics.hpp"
#include "gasinar/replicate.hpp"

namespace gasinar::io {

inline constexpr const char* kVersion = "0.1.0";

// One count per row; an optional header row and an optional leading date
// column are detected and skipped. Negative, fractional or non-numeric
// count cells fail with the offending line number.
CountSeries read_counts_csv(const std::filesystem::path& path);

// Writes via a temporary file and a rename, so readers never see a
// partially written document.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

nlohmann::json model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);

nlohmann::json fit_to_json(const FitResult& fit);
nlohmann::json lr_to_json(const LrTestResult& lr);
nlohmann::json contraction_to_json(const ContractionReport& report);
nlohmann::json forecast_to_json(const ForecastDistribution& forecast);
nlohmann::json eval_to_json(const EvalReport& report);
nlohmann::json recovery_report_to_json(const RecoveryStudyReport& report);
nlohmann::json misspec_report_to_json(const MisspecStudyReport& report);

std::string simulated_series_csv(const SimulatedSeries& sim);
std::string filter_path_csv(const CountSeries& series, const FilterPath& path);
std::string forecast_pmf_csv(const ForecastDistribution& forecast);
std::string bands_csv(const AlphaBands& bands);
std::string eval_csv(const std::vector<EvalReport>& reports);

}  // namespace gasinar::io

#endif
