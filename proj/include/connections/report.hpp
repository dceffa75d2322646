#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "connections/eval.hpp"

namespace connections {

extern const char* const kToolkitVersion;

nlohmann::json to_json(const AggregateReport& r);
AggregateReport aggregate_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepCurve& c);
SweepCurve sweep_curve_from_json(const nlohmann::json& j);

// color,successes,total,rate
std::string per_color_csv(const AggregateReport& r);
// first_guess,successes,total,rate
std::string first_guess_csv(const AggregateReport& r);
// allowed_guesses,solve_fraction
std::string sweep_csv(const SweepCurve& c);
// allowed_guesses,puzzle,yellow,green,blue,purple
std::string sweep_colors_csv(const SweepCurve& c);

nlohmann::json transcripts_to_json(const std::vector<Transcript>& transcripts);
std::vector<Transcript> transcripts_from_json(const nlohmann::json& j);
std::vector<Transcript> load_transcripts(const std::filesystem::path& path);

enum class ReportFormat { Json, Csv, Both };

struct ReportFiles {
  std::vector<std::filesystem::path> written;
};

// Writes into `dir`:
//   JSON: report.json, transcripts.json (and manifest.json when given)
//   CSV:  colors.csv, first_guess.csv, and sweep.csv + sweep_colors.csv
//         when a curve is given
// Output is byte-identical for identical inputs.
ReportFiles write_report(const std::filesystem::path& dir, const AggregateReport& report,
                         const std::vector<Transcript>& transcripts, ReportFormat format,
                         const std::optional<SweepCurve>& sweep = std::nullopt,
                         const std::optional<nlohmann::json>& manifest = std::nullopt);

// {"toolkit_version", "created_by", "run": <run config>}.
nlohmann::json make_manifest(const nlohmann::json& run_config);

}  // namespace connections
