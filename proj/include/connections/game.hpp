#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "connections/puzzle.hpp"

namespace connections {

// A submitted group. Holds whatever the caller supplied; the engine, not the
// constructor, decides whether it is a legal guess, so arity problems come
// back as Invalid feedback instead of exceptions.
struct Guess {
  std::vector<Word> words;

  Guess() = default;
  explicit Guess(std::vector<Word> w);

  // Words sorted by canonical text. Two guesses are the same guess iff their
  // sorted word lists match.
  std::vector<Word> sorted() const;
  bool same_as(const Guess& other) const { return sorted() == other.sorted(); }
  bool operator==(const Guess&) const = default;
};

struct PartitionGuess {
  std::vector<Guess> groups;

  bool same_as(const PartitionGuess& other) const;
  bool operator==(const PartitionGuess&) const = default;
};

enum class FeedbackKind {
  Correct,
  NearlyCorrect,
  Incorrect,
  AllCorrect,
  NotAllCorrect,
  Invalid,
};

enum class InvalidReason {
  NotFourWords,
  UnknownWord,
  WordAlreadySolved,
  DuplicateGuess,
  MalformedPartition,
};

std::string_view to_string(FeedbackKind kind);
std::string_view to_string(InvalidReason reason);
std::optional<FeedbackKind> parse_feedback_kind(std::string_view text);
std::optional<InvalidReason> parse_invalid_reason(std::string_view text);

struct Feedback {
  FeedbackKind kind = FeedbackKind::Incorrect;
  // Set only for Correct.
  std::optional<Category> category;
  // Set only for Invalid.
  std::optional<InvalidReason> reason;

  static Feedback correct(Category c) { return {FeedbackKind::Correct, std::move(c), {}}; }
  static Feedback nearly_correct() { return {FeedbackKind::NearlyCorrect, {}, {}}; }
  static Feedback incorrect() { return {FeedbackKind::Incorrect, {}, {}}; }
  static Feedback all_correct() { return {FeedbackKind::AllCorrect, {}, {}}; }
  static Feedback not_all_correct() { return {FeedbackKind::NotAllCorrect, {}, {}}; }
  static Feedback invalid(InvalidReason r) { return {FeedbackKind::Invalid, {}, r}; }

  bool is_invalid() const { return kind == FeedbackKind::Invalid; }
  // True for the outcomes that consume the incorrect-guess budget.
  bool costs_budget() const {
    return kind == FeedbackKind::NearlyCorrect || kind == FeedbackKind::Incorrect ||
           kind == FeedbackKind::NotAllCorrect;
  }
  bool operator==(const Feedback&) const = default;
};

enum class Variant { Iterative, AllInOne };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);

struct WordOrder {
  enum class Kind { Shuffled, Grouped };
  Kind kind = Kind::Shuffled;
  std::uint64_t seed = 0;

  static WordOrder shuffled(std::uint64_t seed) { return {Kind::Shuffled, seed}; }
  static WordOrder grouped() { return {Kind::Grouped, 0}; }
  bool operator==(const WordOrder&) const = default;
};

inline constexpr int kOfficialMaxIncorrect = 4;
inline constexpr int kExperimentMaxIncorrect = 5;

struct GameConfig {
  Variant variant = Variant::Iterative;
  int max_incorrect = kOfficialMaxIncorrect;
  WordOrder word_order;

  void validate() const;
  bool operator==(const GameConfig&) const = default;
};

enum class GameStatus { InProgress, Won, Lost };
std::string_view to_string(GameStatus s);

struct Move {
  std::variant<Guess, PartitionGuess> submission;
  Feedback feedback;
  bool operator==(const Move&) const = default;
};

class GameError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Seeded Fisher-Yates over any vector, driven by mt19937_64 with rejection
// sampling so the permutation is identical on every standard library.
void seeded_shuffle(std::vector<Word>& words, std::uint64_t seed);

class GameState {
 public:
  static GameState new_game(Puzzle puzzle, GameConfig config);

  // Replays `moves` from a fresh game. Recorded feedback is ignored; the
  // engine recomputes it.
  static GameState replay(Puzzle puzzle, GameConfig config,
                          const std::vector<Move>& moves);

  // Iterative variant only. Throws GameError if the game is over or the
  // variant is wrong.
  Feedback submit_guess(const Guess& guess);

  // All-in-one variant only.
  Feedback submit_partition(const PartitionGuess& partition);

  // The remaining four words. Throws GameError unless exactly four remain.
  Guess forced_final_guess() const;

  const Puzzle& puzzle() const { return puzzle_; }
  const GameConfig& config() const { return config_; }
  const std::vector<Word>& presented_order() const { return presented_order_; }
  // Unsolved words, in presented order.
  const std::vector<Word>& remaining() const { return remaining_; }
  const std::vector<Category>& solved() const { return solved_; }
  int incorrect_count() const { return incorrect_count_; }
  int guesses_left() const { return config_.max_incorrect - incorrect_count_; }
  const std::vector<Move>& history() const { return history_; }
  GameStatus status() const { return status_; }
  bool finished() const { return status_ != GameStatus::InProgress; }
  bool is_remaining(const Word& w) const;

  bool operator==(const GameState&) const = default;

 private:
  GameState(Puzzle puzzle, GameConfig config);

  Feedback record(Move move);
  void require_playable(Variant expected) const;

  Puzzle puzzle_;
  GameConfig config_;
  std::vector<Word> presented_order_;
  std::vector<Word> remaining_;
  std::vector<Category> solved_;
  int incorrect_count_ = 0;
  std::vector<Move> history_;
  GameStatus status_ = GameStatus::InProgress;
};

}  // namespace connections
