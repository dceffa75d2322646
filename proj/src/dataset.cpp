#include "connections/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace connections {
namespace {

using nlohmann::json;

bool is_blank(const std::string& text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

bool valid_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  int month = std::stoi(s.substr(5, 2));
  int day = std::stoi(s.substr(8, 2));
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::string describe_parse_error(const std::string& text, const json::parse_error& e) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << "JSON parse error at line " << line << ", column " << col << ": " << e.what();
  return os.str();
}

struct Collected {
  std::vector<Puzzle> puzzles;
  std::vector<ValidationIssue> errors;
  std::vector<std::string> warnings;
};

// Validates one record; returns the Puzzle when every rule passes.
std::optional<Puzzle> check_record(const json& rec, long index,
                                   std::vector<ValidationIssue>& errors) {
  std::string id;
  if (rec.is_object() && rec.contains("id") && rec["id"].is_string()) {
    id = rec["id"].get<std::string>();
  }
  std::size_t before = errors.size();
  auto issue = [&](std::string rule, std::string message) {
    errors.push_back({index, id, std::move(rule), "puzzle '" + id + "' (record " +
                                                      std::to_string(index) + "): " +
                                                      std::move(message)});
  };

  if (!rec.is_object()) {
    issue("record_not_object", "record is not a JSON object");
    return std::nullopt;
  }
  if (id.empty()) issue("missing_id", "missing or empty string field 'id'");

  std::optional<std::string> date;
  if (rec.contains("date") && !rec["date"].is_null()) {
    if (!rec["date"].is_string() || !valid_date(rec["date"].get<std::string>())) {
      issue("bad_date", "field 'date' must be a YYYY-MM-DD string");
    } else {
      date = rec["date"].get<std::string>();
    }
  }

  if (!rec.contains("groups") || !rec["groups"].is_array()) {
    issue("missing_groups", "missing array field 'groups'");
    return std::nullopt;
  }
  const auto& groups = rec["groups"];
  if (groups.size() != 4) {
    issue("group_count", "expected 4 groups, found " + std::to_string(groups.size()));
  }

  std::vector<Category> cats;
  std::set<Color> colors;
  std::map<Word, int> word_counts;
  std::size_t total_words = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& grp = groups[g];
    std::string where = "group " + std::to_string(g);
    if (!grp.is_object()) {
      issue("group_not_object", where + " is not a JSON object");
      continue;
    }
    Category cat;
    if (!grp.contains("name") || !grp["name"].is_string()) {
      issue("missing_group_name", where + " has no string 'name'");
    } else {
      cat.name = grp["name"].get<std::string>();
    }
    std::optional<Color> color;
    if (grp.contains("color") && grp["color"].is_string()) {
      color = parse_color(grp["color"].get<std::string>());
    }
    if (!color) {
      issue("bad_color", where + " color must be one of yellow, green, blue, purple");
    } else if (!colors.insert(*color).second) {
      issue("duplicate_color", where + " repeats color " + std::string(to_string(*color)));
    } else {
      cat.color = *color;
    }
    if (!grp.contains("words") || !grp["words"].is_array()) {
      issue("missing_words", where + " has no array 'words'");
      continue;
    }
    const auto& words = grp["words"];
    total_words += words.size();
    if (words.size() != 4) {
      issue("group_word_count",
            where + " has " + std::to_string(words.size()) + " words, expected 4");
    }
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (!words[w].is_string() || Word::canonicalize(words[w].get<std::string>()).empty()) {
        issue("bad_word", where + " word " + std::to_string(w) + " is not a non-empty string");
        continue;
      }
      Word word(words[w].get<std::string>());
      if (++word_counts[word] == 2) {
        issue("duplicate_word", "word '" + word.text() + "' appears in more than one group");
      }
      if (w < 4) cat.words[w] = word;
    }
    cats.push_back(std::move(cat));
  }
  if (groups.size() == 4 && total_words != 16) {
    issue("word_count", "puzzle has " + std::to_string(total_words) + " words, expected 16");
  }

  if (errors.size() != before) return std::nullopt;
  try {
    return Puzzle(id, date, std::move(cats));
  } catch (const PuzzleError& e) {
    issue("invariant", e.what());
    return std::nullopt;
  }
}

Collected collect(const std::string& text) {
  Collected out;
  if (is_blank(text)) {
    out.warnings.push_back("dataset file is empty; 0 puzzles");
    return out;
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    out.errors.push_back({-1, "", "parse_error", describe_parse_error(text, e)});
    return out;
  }
  if (!doc.is_object()) {
    out.errors.push_back({-1, "", "not_object", "top-level JSON value must be an object"});
    return out;
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != kDatasetSchemaVersion) {
    out.errors.push_back({-1, "", "bad_version",
                          "field 'version' must be " + std::to_string(kDatasetSchemaVersion)});
  }
  if (!doc.contains("puzzles") || !doc["puzzles"].is_array()) {
    out.errors.push_back({-1, "", "missing_puzzles", "missing array field 'puzzles'"});
    return out;
  }
  const auto& records = doc["puzzles"];
  if (records.empty()) out.warnings.push_back("dataset contains 0 puzzles");

  std::map<std::string, std::vector<long>> ids;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.is_object() && rec.contains("id") && rec["id"].is_string()) {
      ids[rec["id"].get<std::string>()].push_back(static_cast<long>(i));
    }
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    auto idx = static_cast<long>(i);
    auto puzzle = check_record(records[i], idx, out.errors);
    if (records[i].is_object() && records[i].contains("id") && records[i]["id"].is_string()) {
      auto id = records[i]["id"].get<std::string>();
      const auto& uses = ids[id];
      if (uses.size() > 1) {
        std::string list;
        for (long u : uses) list += (list.empty() ? "" : ", ") + std::to_string(u);
        out.errors.push_back({idx, id, "duplicate_id",
                              "puzzle id '" + id + "' is used by records " + list});
        continue;
      }
    }
    if (puzzle) out.puzzles.push_back(std::move(*puzzle));
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetIoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DatasetIoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DatasetIoError("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) throw DatasetIoError("error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DatasetIoError("cannot rename to '" + path.string() + "': " + ec.message());
}

std::vector<Puzzle> parse_dataset(const std::string& text) {
  auto c = collect(text);
  if (!c.errors.empty()) {
    const auto& e = c.errors.front();
    std::string where = e.record < 0 ? "dataset" : "record " + std::to_string(e.record);
    if (!e.puzzle_id.empty()) where += " (" + e.puzzle_id + ")";
    throw DatasetError(where + ": " + e.rule + ": " + e.message);
  }
  return std::move(c.puzzles);
}

std::vector<Puzzle> load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_text_file(path));
}

DatasetStats compute_stats(const std::vector<Puzzle>& puzzles) {
  DatasetStats s;
  s.puzzle_count = puzzles.size();
  std::map<Word, int> puzzles_per_word;
  for (const auto& p : puzzles) {
    for (const auto& w : p.grouped_words()) ++puzzles_per_word[w];
  }
  s.distinct_words = puzzles_per_word.size();
  s.words_shared_across_puzzles = static_cast<std::size_t>(
      std::count_if(puzzles_per_word.begin(), puzzles_per_word.end(),
                    [](const auto& kv) { return kv.second > 1; }));
  return s;
}

ValidationReport validate_dataset_text(const std::string& text) {
  auto c = collect(text);
  ValidationReport r;
  r.errors = std::move(c.errors);
  r.warnings = std::move(c.warnings);
  if (r.errors.empty()) r.stats = compute_stats(c.puzzles);
  return r;
}

ValidationReport validate_dataset(const std::filesystem::path& path) {
  return validate_dataset_text(read_text_file(path));
}

nlohmann::json ValidationReport::to_json() const {
  json j;
  j["ok"] = ok();
  j["errors"] = json::array();
  for (const auto& e : errors) {
    j["errors"].push_back({{"record", e.record}, {"puzzle_id", e.puzzle_id},
                           {"rule", e.rule}, {"message", e.message}});
  }
  j["warnings"] = warnings;
  if (stats) {
    j["stats"] = {{"puzzle_count", stats->puzzle_count},
                  {"distinct_words", stats->distinct_words},
                  {"words_shared_across_puzzles", stats->words_shared_across_puzzles}};
  }
  return j;
}

nlohmann::json dataset_to_json(const std::vector<Puzzle>& puzzles) {
  json doc;
  doc["version"] = kDatasetSchemaVersion;
  doc["puzzles"] = json::array();
  for (const auto& p : puzzles) {
    json rec;
    rec["id"] = p.id();
    rec["date"] = p.date() ? json(*p.date()) : json(nullptr);
    rec["groups"] = json::array();
    for (const auto& cat : p.categories()) {
      json words = json::array();
      for (const auto& w : cat.words) words.push_back(w.text());
      rec["groups"].push_back(
          {{"name", cat.name}, {"color", std::string(to_string(cat.color))}, {"words", words}});
    }
    doc["puzzles"].push_back(std::move(rec));
  }
  return doc;
}

void save_dataset(const std::filesystem::path& path, const std::vector<Puzzle>& puzzles) {
  write_text_file(path, dataset_to_json(puzzles).dump(2) + "\n");
}

const Puzzle* find_puzzle(const std::vector<Puzzle>& puzzles, const std::string& id) {
  for (const auto& p : puzzles) {
    if (p.id() == id) return &p;
  }
  return nullptr;
}

}  // namespace connections
