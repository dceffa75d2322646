#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "connections/game.hpp"

namespace connections {

enum class Role { System, User, Assistant };
std::string_view to_string(Role r);
std::optional<Role> parse_role(std::string_view text);

struct ChatMessage {
  Role role = Role::User;
  std::string content;
  bool operator==(const ChatMessage&) const = default;
};

// How an episode ended. The last two are "unsolved" without being a loss.
enum class Outcome { Won, Lost, AbortedInvalid, TransportFailure, Error };
std::string_view to_string(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view text);

struct TranscriptEvent {
  enum class Kind { Guess, Partition, ParseFailure };
  Kind kind = Kind::Guess;
  // One group for Guess, four for Partition, none for ParseFailure.
  std::vector<std::vector<Word>> groups;
  // Absent for ParseFailure (the game never saw it).
  std::optional<Feedback> feedback;
  std::string parse_error;
  // Budget already spent when this event happened.
  int incorrect_before = 0;
  // Index into Transcript::conversation of the assistant reply behind it.
  std::optional<std::size_t> reply_index;

  bool operator==(const TranscriptEvent&) const = default;
};

struct CategorySolve {
  Color color = Color::Yellow;
  int incorrect_before = 0;
  bool operator==(const CategorySolve&) const = default;
};

// Full record of one solver-vs-puzzle episode.
struct Transcript {
  std::string puzzle_id;
  std::string solver;
  std::uint64_t seed = 0;
  GameConfig config;
  int max_invalid = 0;  // 0 when the solver cannot produce invalid guesses
  std::vector<TranscriptEvent> events;
  Outcome outcome = Outcome::Error;
  int incorrect_count = 0;
  int invalid_count = 0;
  std::vector<CategorySolve> solved;
  std::vector<ChatMessage> conversation;
  std::string error;

  bool won() const { return outcome == Outcome::Won; }
  bool solved_color(Color c) const;
  // Feedback of the first event the game accepted as a real guess.
  std::optional<FeedbackKind> first_valid_feedback() const;

  bool operator==(const Transcript&) const = default;
};

// Appends the engine's view of a submission to `t`, keeping counters and the
// solve list in sync. Used by every solver.
void record_submission(Transcript& t, const GameState& before_state, const Move& move,
                       std::optional<std::size_t> reply_index = std::nullopt);

// Sets outcome from a finished or abandoned game.
void finish_from_state(Transcript& t, const GameState& state);

// Re-runs every accepted submission through a fresh engine.
GameState resimulate(const Transcript& t, const Puzzle& puzzle);

// True when the engine replay agrees with the recorded outcome.
bool consistent_with_engine(const Transcript& t, const Puzzle& puzzle);

nlohmann::json to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GameConfig& c);
GameConfig game_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Feedback& f);
Feedback feedback_from_json(const nlohmann::json& j);

}  // namespace connections
