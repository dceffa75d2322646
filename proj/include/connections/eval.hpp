#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "connections/game.hpp"
#include "connections/llm_solver.hpp"
#include "connections/transcript.hpp"
#include "connections/transport.hpp"

namespace connections {

struct Rate {
  std::size_t successes = 0;
  std::size_t total = 0;
  double value() const { return total == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(total); }
  bool operator==(const Rate&) const = default;
};

// Plays one (puzzle, config) episode. The config carries the seed.
using EpisodeFn = std::function<Transcript(const Puzzle&, const GameConfig&)>;

struct BatchOptions {
  // Seeds only change word order and the solver ignores it: play each puzzle
  // once and relabel the transcript for every seed.
  bool seed_independent = false;
  unsigned threads = 1;
};

// One transcript per (puzzle, seed), puzzle-major, seed-minor. Exceptions
// from a single episode become Outcome::Error transcripts.
std::vector<Transcript> run_batch(const std::vector<Puzzle>& puzzles,
                                  const std::vector<std::uint64_t>& seeds, const GameConfig& base,
                                  const EpisodeFn& episode, const BatchOptions& options = {});

struct EmbedSolverSpec {
  std::filesystem::path table_path;
};

enum class TransportKind { Replay, Http };

struct LlmSolverSpec {
  SolverParams params;
  TransportKind transport = TransportKind::Replay;
  // Replay: <fixture_dir>/<puzzle id>_seed<seed>.json
  std::filesystem::path fixture_dir;
  HttpTransportConfig http;
  int max_concurrent = 4;
  std::chrono::milliseconds min_request_interval{0};
  // Http only: write a replayable fixture per session here.
  std::optional<std::filesystem::path> capture_dir;
};

struct RunConfig {
  std::filesystem::path dataset_path;
  std::variant<EmbedSolverSpec, LlmSolverSpec> solver;
  std::vector<std::uint64_t> seeds{0};
  GameConfig game{Variant::Iterative, kExperimentMaxIncorrect, WordOrder::shuffled(0)};
  std::optional<int> sweep_budget;
  unsigned threads = 1;

  void validate() const;
  // Game config actually played (sweep budget overrides max_incorrect).
  GameConfig effective_game() const;
  nlohmann::json to_json() const;
};

std::filesystem::path session_fixture_path(const std::filesystem::path& dir, const std::string& puzzle_id,
                                           std::uint64_t seed);

// Loads the dataset and solver resources, then runs the batch.
std::vector<Transcript> run_eval(const RunConfig& config);

struct PuzzleSummary {
  std::size_t runs = 0;
  std::size_t wins = 0;
  std::array<std::size_t, 4> color_solves{};
  bool operator==(const PuzzleSummary&) const = default;
};

struct AggregateReport {
  std::size_t transcripts = 0;
  Rate overall;
  std::array<Rate, 4> per_color;
  // First accepted guess: correct / nearly_correct / incorrect. All-in-one
  // runs count AllCorrect as correct and NotAllCorrect as incorrect.
  std::map<std::string, Rate> first_guess;
  // Sessions with no accepted guess, left out of first_guess.
  std::size_t first_guess_excluded = 0;
  std::map<std::string, std::size_t> outcomes;
  // Keyed by puzzle id, so seeds can be pooled or averaged per puzzle.
  std::map<std::string, PuzzleSummary> per_puzzle;

  bool operator==(const AggregateReport&) const = default;
};

// Throws std::invalid_argument on empty input.
AggregateReport aggregate(const std::vector<Transcript>& transcripts);

struct CurvePoint {
  int allowed_incorrect = 0;
  Rate puzzles;
  std::array<Rate, 4> colors;
  bool operator==(const CurvePoint&) const = default;
};

struct SweepCurve {
  int budget = 0;
  std::vector<CurvePoint> points;  // k = 0..budget

  // Smallest k whose puzzle solve fraction reaches `fraction`.
  std::optional<int> first_reaching(double fraction) const;
  bool operator==(const SweepCurve&) const = default;
};

// Solve fraction as a function of allowed incorrect guesses, from transcripts
// all run at `budget`. Rejects mixed budgets and LLM transcripts, whose guess
// sequence depends on the budget.
SweepCurve sweep_allowance(const std::vector<Transcript>& transcripts, int budget);

// Per-transcript 0/1 success (pooled over seeds), or per-puzzle mean success
// across seeds, ordered by puzzle id.
std::vector<double> success_samples(const std::vector<Transcript>& transcripts, bool per_puzzle_mean);
std::vector<double> color_samples(const std::vector<Transcript>& transcripts, Color color,
                                  bool per_puzzle_mean);

}  // namespace connections
