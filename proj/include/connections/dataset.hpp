#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "connections/puzzle.hpp"

namespace connections {

inline constexpr int kDatasetSchemaVersion = 1;

// Raised by load_dataset. what() names the record and rule.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// I/O failure (missing/unreadable file), distinct from bad content.
class DatasetIoError : public DatasetError {
 public:
  using DatasetError::DatasetError;
};

struct ValidationIssue {
  // Index of the puzzle record, or -1 for file-level problems.
  long record = -1;
  std::string puzzle_id;
  std::string rule;
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

struct DatasetStats {
  std::size_t puzzle_count = 0;
  std::size_t distinct_words = 0;
  // Words that occur in more than one puzzle.
  std::size_t words_shared_across_puzzles = 0;
};

struct ValidationReport {
  std::optional<DatasetStats> stats;  // set iff errors is empty
  std::vector<ValidationIssue> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
  nlohmann::json to_json() const;
};

// Strict load: first problem throws. Order is preserved.
std::vector<Puzzle> load_dataset(const std::filesystem::path& path);
std::vector<Puzzle> parse_dataset(const std::string& text);

// Collects every problem instead of stopping at the first. Throws
// DatasetIoError only when the file cannot be read.
ValidationReport validate_dataset(const std::filesystem::path& path);
ValidationReport validate_dataset_text(const std::string& text);

DatasetStats compute_stats(const std::vector<Puzzle>& puzzles);

nlohmann::json dataset_to_json(const std::vector<Puzzle>& puzzles);
void save_dataset(const std::filesystem::path& path, const std::vector<Puzzle>& puzzles);

const Puzzle* find_puzzle(const std::vector<Puzzle>& puzzles, const std::string& id);

std::string read_text_file(const std::filesystem::path& path);
// Writes via a temp file and rename.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace connections
