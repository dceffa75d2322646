#include "connections/transcript.hpp"

#include <algorithm>
#include <stdexcept>

namespace connections {

using nlohmann::json;

std::string_view to_string(Role r) {
  switch (r) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text == "system") return Role::System;
  if (text == "user") return Role::User;
  if (text == "assistant") return Role::Assistant;
  return std::nullopt;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Won: return "won";
    case Outcome::Lost: return "lost";
    case Outcome::AbortedInvalid: return "aborted_invalid";
    case Outcome::TransportFailure: return "transport_failure";
    case Outcome::Error: return "error";
  }
  return "error";
}

std::optional<Outcome> parse_outcome(std::string_view text) {
  for (auto o : {Outcome::Won, Outcome::Lost, Outcome::AbortedInvalid, Outcome::TransportFailure,
                 Outcome::Error}) {
    if (to_string(o) == text) return o;
  }
  return std::nullopt;
}

bool Transcript::solved_color(Color c) const {
  return std::any_of(solved.begin(), solved.end(), [c](const CategorySolve& s) { return s.color == c; });
}

std::optional<FeedbackKind> Transcript::first_valid_feedback() const {
  for (const auto& e : events) {
    if (e.feedback && !e.feedback->is_invalid()) return e.feedback->kind;
  }
  return std::nullopt;
}

void record_submission(Transcript& t, const GameState& before_state, const Move& move,
                       std::optional<std::size_t> reply_index) {
  TranscriptEvent e;
  e.incorrect_before = before_state.incorrect_count();
  e.reply_index = reply_index;
  e.feedback = move.feedback;
  if (const auto* g = std::get_if<Guess>(&move.submission)) {
    e.kind = TranscriptEvent::Kind::Guess;
    e.groups.push_back(g->words);
  } else {
    e.kind = TranscriptEvent::Kind::Partition;
    for (const auto& grp : std::get<PartitionGuess>(move.submission).groups) {
      e.groups.push_back(grp.words);
    }
  }
  const auto& fb = move.feedback;
  if (fb.is_invalid()) {
    ++t.invalid_count;
  } else if (fb.costs_budget()) {
    ++t.incorrect_count;
  } else if (fb.kind == FeedbackKind::Correct) {
    t.solved.push_back({fb.category->color, e.incorrect_before});
  } else if (fb.kind == FeedbackKind::AllCorrect) {
    for (Color c : kAllColors) t.solved.push_back({c, e.incorrect_before});
  }
  t.events.push_back(std::move(e));
}

void finish_from_state(Transcript& t, const GameState& state) {
  if (state.status() == GameStatus::Won) {
    t.outcome = Outcome::Won;
  } else if (state.status() == GameStatus::Lost) {
    t.outcome = Outcome::Lost;
  }
}

GameState resimulate(const Transcript& t, const Puzzle& puzzle) {
  auto state = GameState::new_game(puzzle, t.config);
  for (const auto& e : t.events) {
    if (e.kind == TranscriptEvent::Kind::ParseFailure) continue;
    if (state.finished()) break;
    if (e.kind == TranscriptEvent::Kind::Guess) {
      state.submit_guess(Guess(e.groups.at(0)));
    } else {
      PartitionGuess p;
      for (const auto& g : e.groups) p.groups.emplace_back(g);
      state.submit_partition(p);
    }
  }
  return state;
}

bool consistent_with_engine(const Transcript& t, const Puzzle& puzzle) {
  auto state = resimulate(t, puzzle);
  if (state.incorrect_count() != t.incorrect_count) return false;
  switch (t.outcome) {
    case Outcome::Won: return state.status() == GameStatus::Won;
    case Outcome::Lost: return state.status() == GameStatus::Lost;
    default: return state.status() == GameStatus::InProgress;
  }
}

json to_json(const Feedback& f) {
  json j{{"kind", std::string(to_string(f.kind))}};
  if (f.category) {
    j["category"] = {{"name", f.category->name}, {"color", std::string(to_string(f.category->color))}};
    json words = json::array();
    for (const auto& w : f.category->words) words.push_back(w.text());
    j["category"]["words"] = words;
  }
  if (f.reason) j["reason"] = std::string(to_string(*f.reason));
  return j;
}

Feedback feedback_from_json(const json& j) {
  Feedback f;
  auto kind = parse_feedback_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::runtime_error("unknown feedback kind");
  f.kind = *kind;
  if (j.contains("category")) {
    Category c;
    c.name = j["category"].at("name").get<std::string>();
    c.color = parse_color(j["category"].at("color").get<std::string>()).value();
    const auto& words = j["category"].at("words");
    for (std::size_t i = 0; i < 4; ++i) c.words[i] = Word(words.at(i).get<std::string>());
    f.category = std::move(c);
  }
  if (j.contains("reason")) f.reason = parse_invalid_reason(j["reason"].get<std::string>());
  return f;
}

json to_json(const GameConfig& c) {
  return {{"variant", std::string(to_string(c.variant))},
          {"max_incorrect", c.max_incorrect},
          {"word_order", c.word_order.kind == WordOrder::Kind::Grouped ? "grouped" : "shuffled"},
          {"shuffle_seed", c.word_order.seed}};
}

GameConfig game_config_from_json(const json& j) {
  GameConfig c;
  c.variant = parse_variant(j.at("variant").get<std::string>()).value();
  c.max_incorrect = j.at("max_incorrect").get<int>();
  c.word_order.kind = j.at("word_order").get<std::string>() == "grouped" ? WordOrder::Kind::Grouped
                                                                          : WordOrder::Kind::Shuffled;
  c.word_order.seed = j.at("shuffle_seed").get<std::uint64_t>();
  return c;
}

json to_json(const Transcript& t) {
  json j;
  j["puzzle_id"] = t.puzzle_id;
  j["solver"] = t.solver;
  j["seed"] = t.seed;
  j["config"] = to_json(t.config);
  j["max_invalid"] = t.max_invalid;
  j["outcome"] = std::string(to_string(t.outcome));
  j["incorrect_count"] = t.incorrect_count;
  j["invalid_count"] = t.invalid_count;
  j["solved"] = json::array();
  for (const auto& s : t.solved) {
    j["solved"].push_back({{"color", std::string(to_string(s.color))}, {"incorrect_before", s.incorrect_before}});
  }
  j["events"] = json::array();
  for (const auto& e : t.events) {
    json ev;
    ev["kind"] = e.kind == TranscriptEvent::Kind::Guess       ? "guess"
                 : e.kind == TranscriptEvent::Kind::Partition ? "partition"
                                                              : "parse_failure";
    ev["groups"] = json::array();
    for (const auto& g : e.groups) {
      json words = json::array();
      for (const auto& w : g) words.push_back(w.text());
      ev["groups"].push_back(words);
    }
    if (e.feedback) ev["feedback"] = to_json(*e.feedback);
    if (!e.parse_error.empty()) ev["parse_error"] = e.parse_error;
    ev["incorrect_before"] = e.incorrect_before;
    if (e.reply_index) ev["reply_index"] = *e.reply_index;
    j["events"].push_back(std::move(ev));
  }
  j["conversation"] = json::array();
  for (const auto& m : t.conversation) {
    j["conversation"].push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
  }
  if (!t.error.empty()) j["error"] = t.error;
  return j;
}

Transcript transcript_from_json(const json& j) {
  Transcript t;
  t.puzzle_id = j.at("puzzle_id").get<std::string>();
  t.solver = j.at("solver").get<std::string>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.config = game_config_from_json(j.at("config"));
  t.max_invalid = j.at("max_invalid").get<int>();
  auto outcome = parse_outcome(j.at("outcome").get<std::string>());
  if (!outcome) throw std::runtime_error("unknown transcript outcome");
  t.outcome = *outcome;
  t.incorrect_count = j.at("incorrect_count").get<int>();
  t.invalid_count = j.at("invalid_count").get<int>();
  for (const auto& s : j.at("solved")) {
    t.solved.push_back({parse_color(s.at("color").get<std::string>()).value(),
                        s.at("incorrect_before").get<int>()});
  }
  for (const auto& ev : j.at("events")) {
    TranscriptEvent e;
    auto kind = ev.at("kind").get<std::string>();
    e.kind = kind == "guess"       ? TranscriptEvent::Kind::Guess
             : kind == "partition" ? TranscriptEvent::Kind::Partition
                                   : TranscriptEvent::Kind::ParseFailure;
    for (const auto& g : ev.at("groups")) {
      std::vector<Word> words;
      for (const auto& w : g) words.emplace_back(w.get<std::string>());
      e.groups.push_back(std::move(words));
    }
    if (ev.contains("feedback")) e.feedback = feedback_from_json(ev["feedback"]);
    if (ev.contains("parse_error")) e.parse_error = ev["parse_error"].get<std::string>();
    e.incorrect_before = ev.at("incorrect_before").get<int>();
    if (ev.contains("reply_index")) e.reply_index = ev["reply_index"].get<std::size_t>();
    t.events.push_back(std::move(e));
  }
  for (const auto& m : j.at("conversation")) {
    t.conversation.push_back({parse_role(m.at("role").get<std::string>()).value(),
                              m.at("content").get<std::string>()});
  }
  if (j.contains("error")) t.error = j["error"].get<std::string>();
  return t;
}

}  // namespace connections
