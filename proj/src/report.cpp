#include "connections/report.hpp"

#include <fmt/format.h>

#include "connections/dataset.hpp"

namespace connections {

const char* const kToolkitVersion = "0.1.0";

using nlohmann::json;

namespace {

json rate_json(const Rate& r) {
  return {{"successes", r.successes}, {"total", r.total}, {"rate", r.value()}};
}

Rate rate_from_json(const json& j) {
  return {j.at("successes").get<std::size_t>(), j.at("total").get<std::size_t>()};
}

std::string csv_row(std::string_view label, const Rate& r) {
  return fmt::format("{},{},{},{:.6f}\n", label, r.successes, r.total, r.value());
}

}  // namespace

json to_json(const AggregateReport& r) {
  json j;
  j["transcripts"] = r.transcripts;
  j["overall"] = rate_json(r.overall);
  j["per_color"] = json::object();
  for (Color c : kAllColors) j["per_color"][std::string(to_string(c))] = rate_json(r.per_color[index_of(c)]);
  j["first_guess"] = json::object();
  for (const auto& [k, rate] : r.first_guess) j["first_guess"][k] = rate_json(rate);
  j["first_guess_excluded"] = r.first_guess_excluded;
  j["outcomes"] = r.outcomes;
  j["per_puzzle"] = json::array();
  for (const auto& [id, s] : r.per_puzzle) {
    json colors = json::object();
    for (Color c : kAllColors) colors[std::string(to_string(c))] = s.color_solves[index_of(c)];
    j["per_puzzle"].push_back({{"puzzle_id", id},
                               {"runs", s.runs},
                               {"wins", s.wins},
                               {"mean_success", s.runs ? static_cast<double>(s.wins) / static_cast<double>(s.runs) : 0.0},
                               {"color_solves", colors}});
  }
  return j;
}

AggregateReport aggregate_report_from_json(const json& j) {
  AggregateReport r;
  r.transcripts = j.at("transcripts").get<std::size_t>();
  r.overall = rate_from_json(j.at("overall"));
  for (Color c : kAllColors) r.per_color[index_of(c)] = rate_from_json(j.at("per_color").at(std::string(to_string(c))));
  for (const auto& [k, v] : j.at("first_guess").items()) r.first_guess[k] = rate_from_json(v);
  r.first_guess_excluded = j.at("first_guess_excluded").get<std::size_t>();
  r.outcomes = j.at("outcomes").get<std::map<std::string, std::size_t>>();
  for (const auto& p : j.at("per_puzzle")) {
    PuzzleSummary s;
    s.runs = p.at("runs").get<std::size_t>();
    s.wins = p.at("wins").get<std::size_t>();
    for (Color c : kAllColors) s.color_solves[index_of(c)] = p.at("color_solves").at(std::string(to_string(c))).get<std::size_t>();
    r.per_puzzle[p.at("puzzle_id").get<std::string>()] = s;
  }
  return r;
}

json to_json(const SweepCurve& c) {
  json j;
  j["budget"] = c.budget;
  j["points"] = json::array();
  for (const auto& p : c.points) {
    json colors = json::object();
    for (Color col : kAllColors) colors[std::string(to_string(col))] = rate_json(p.colors[index_of(col)]);
    j["points"].push_back({{"allowed_incorrect", p.allowed_incorrect}, {"puzzles", rate_json(p.puzzles)}, {"colors", colors}});
  }
  auto half = c.first_reaching(0.5);
  auto all = c.first_reaching(1.0);
  j["half_solved_at"] = half ? json(*half) : json(nullptr);
  j["all_solved_at"] = all ? json(*all) : json(nullptr);
  return j;
}

SweepCurve sweep_curve_from_json(const json& j) {
  SweepCurve c;
  c.budget = j.at("budget").get<int>();
  for (const auto& p : j.at("points")) {
    CurvePoint cp;
    cp.allowed_incorrect = p.at("allowed_incorrect").get<int>();
    cp.puzzles = rate_from_json(p.at("puzzles"));
    for (Color col : kAllColors) cp.colors[index_of(col)] = rate_from_json(p.at("colors").at(std::string(to_string(col))));
    c.points.push_back(cp);
  }
  return c;
}

std::string per_color_csv(const AggregateReport& r) {
  std::string out = "color,successes,total,rate\n";
  for (Color c : kAllColors) out += csv_row(to_string(c), r.per_color[index_of(c)]);
  return out;
}

std::string first_guess_csv(const AggregateReport& r) {
  std::string out = "first_guess,successes,total,rate\n";
  for (auto k : {"correct", "nearly_correct", "incorrect"}) {
    auto it = r.first_guess.find(k);
    out += csv_row(k, it == r.first_guess.end() ? Rate{} : it->second);
  }
  return out;
}

std::string sweep_csv(const SweepCurve& c) {
  std::string out = "allowed_guesses,solve_fraction\n";
  for (const auto& p : c.points) out += fmt::format("{},{:.6f}\n", p.allowed_incorrect, p.puzzles.value());
  return out;
}

std::string sweep_colors_csv(const SweepCurve& c) {
  std::string out = "allowed_guesses,puzzle,yellow,green,blue,purple\n";
  for (const auto& p : c.points) {
    out += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", p.allowed_incorrect, p.puzzles.value(),
                       p.colors[0].value(), p.colors[1].value(), p.colors[2].value(), p.colors[3].value());
  }
  return out;
}

json transcripts_to_json(const std::vector<Transcript>& transcripts) {
  json arr = json::array();
  for (const auto& t : transcripts) arr.push_back(to_json(t));
  return arr;
}

std::vector<Transcript> transcripts_from_json(const json& j) {
  std::vector<Transcript> out;
  for (const auto& t : j) out.push_back(transcript_from_json(t));
  return out;
}

std::vector<Transcript> load_transcripts(const std::filesystem::path& path) {
  return transcripts_from_json(json::parse(read_text_file(path)));
}

json make_manifest(const json& run_config) {
  return {{"toolkit_version", kToolkitVersion}, {"created_by", "connections"}, {"run", run_config}};
}

ReportFiles write_report(const std::filesystem::path& dir, const AggregateReport& report,
                         const std::vector<Transcript>& transcripts, ReportFormat format,
                         const std::optional<SweepCurve>& sweep, const std::optional<json>& manifest) {
  std::filesystem::create_directories(dir);
  ReportFiles files;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text_file(dir / name, text);
    files.written.push_back(dir / name);
  };
  if (format != ReportFormat::Csv) {
    json doc{{"toolkit_version", kToolkitVersion}, {"report", to_json(report)}};
    if (sweep) doc["sweep"] = to_json(*sweep);
    emit("report.json", doc.dump(2) + "\n");
    emit("transcripts.json", transcripts_to_json(transcripts).dump(2) + "\n");
    if (manifest) emit("manifest.json", manifest->dump(2) + "\n");
  }
  if (format != ReportFormat::Json) {
    emit("colors.csv", per_color_csv(report));
    emit("first_guess.csv", first_guess_csv(report));
    if (sweep) {
      emit("sweep.csv", sweep_csv(*sweep));
      emit("sweep_colors.csv", sweep_colors_csv(*sweep));
    }
  }
  return files;
}

}  // namespace connections
