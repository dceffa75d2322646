#include "connections/game.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace connections {

Guess::Guess(std::vector<Word> w) : words(std::move(w)) {}

std::vector<Word> Guess::sorted() const {
  auto out = words;
  std::sort(out.begin(), out.end());
  return out;
}

bool PartitionGuess::same_as(const PartitionGuess& other) const {
  auto canon = [](const PartitionGuess& p) {
    std::vector<std::vector<Word>> groups;
    for (const auto& g : p.groups) groups.push_back(g.sorted());
    std::sort(groups.begin(), groups.end());
    return groups;
  };
  return canon(*this) == canon(other);
}

std::string_view to_string(FeedbackKind kind) {
  switch (kind) {
    case FeedbackKind::Correct: return "correct";
    case FeedbackKind::NearlyCorrect: return "nearly_correct";
    case FeedbackKind::Incorrect: return "incorrect";
    case FeedbackKind::AllCorrect: return "all_correct";
    case FeedbackKind::NotAllCorrect: return "not_all_correct";
    case FeedbackKind::Invalid: return "invalid";
  }
  return "unknown";
}

std::string_view to_string(InvalidReason reason) {
  switch (reason) {
    case InvalidReason::NotFourWords: return "not_four_words";
    case InvalidReason::UnknownWord: return "unknown_word";
    case InvalidReason::WordAlreadySolved: return "word_already_solved";
    case InvalidReason::DuplicateGuess: return "duplicate_guess";
    case InvalidReason::MalformedPartition: return "malformed_partition";
  }
  return "unknown";
}

std::optional<FeedbackKind> parse_feedback_kind(std::string_view text) {
  for (auto k : {FeedbackKind::Correct, FeedbackKind::NearlyCorrect, FeedbackKind::Incorrect,
                 FeedbackKind::AllCorrect, FeedbackKind::NotAllCorrect, FeedbackKind::Invalid}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<InvalidReason> parse_invalid_reason(std::string_view text) {
  for (auto r : {InvalidReason::NotFourWords, InvalidReason::UnknownWord,
                 InvalidReason::WordAlreadySolved, InvalidReason::DuplicateGuess,
                 InvalidReason::MalformedPartition}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

std::string_view to_string(Variant v) {
  return v == Variant::Iterative ? "iterative" : "challenge";
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "iterative") return Variant::Iterative;
  if (text == "challenge" || text == "all-in-one") return Variant::AllInOne;
  return std::nullopt;
}

std::string_view to_string(GameStatus s) {
  switch (s) {
    case GameStatus::InProgress: return "in_progress";
    case GameStatus::Won: return "won";
    case GameStatus::Lost: return "lost";
  }
  return "unknown";
}

void GameConfig::validate() const {
  if (max_incorrect < 1) {
    throw GameError("max_incorrect must be >= 1, got " + std::to_string(max_incorrect));
  }
}

void seeded_shuffle(std::vector<Word>& words, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = words.size(); i > 1; --i) {
    // Uniform draw in [0, i) by rejection.
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound);
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(words[i - 1], words[static_cast<std::size_t>(r % bound)]);
  }
}

GameState::GameState(Puzzle puzzle, GameConfig config)
    : puzzle_(std::move(puzzle)), config_(config) {}

GameState GameState::new_game(Puzzle puzzle, GameConfig config) {
  config.validate();
  GameState state(std::move(puzzle), config);
  state.presented_order_ = state.puzzle_.grouped_words();
  if (config.word_order.kind == WordOrder::Kind::Shuffled) {
    seeded_shuffle(state.presented_order_, config.word_order.seed);
  }
  state.remaining_ = state.presented_order_;
  return state;
}

GameState GameState::replay(Puzzle puzzle, GameConfig config,
                            const std::vector<Move>& moves) {
  auto state = new_game(std::move(puzzle), config);
  for (const auto& m : moves) {
    if (const auto* g = std::get_if<Guess>(&m.submission)) {
      state.submit_guess(*g);
    } else {
      state.submit_partition(std::get<PartitionGuess>(m.submission));
    }
  }
  return state;
}

bool GameState::is_remaining(const Word& w) const {
  return std::find(remaining_.begin(), remaining_.end(), w) != remaining_.end();
}

void GameState::require_playable(Variant expected) const {
  if (finished()) throw GameError("game is already finished");
  if (config_.variant != expected) {
    throw GameError(std::string("submission does not match the ") +
                    std::string(to_string(config_.variant)) + " variant");
  }
}

Feedback GameState::record(Move move) {
  auto fb = move.feedback;
  history_.push_back(std::move(move));
  return fb;
}

Feedback GameState::submit_guess(const Guess& guess) {
  require_playable(Variant::Iterative);
  auto invalid = [&](InvalidReason r) { return record({guess, Feedback::invalid(r)}); };

  std::set<Word> distinct(guess.words.begin(), guess.words.end());
  if (guess.words.size() != 4 || distinct.size() != 4) return invalid(InvalidReason::NotFourWords);
  for (const auto& w : guess.words) {
    if (!puzzle_.contains(w)) return invalid(InvalidReason::UnknownWord);
  }
  for (const auto& w : guess.words) {
    if (!is_remaining(w)) return invalid(InvalidReason::WordAlreadySolved);
  }
  for (const auto& m : history_) {
    const auto* prior = std::get_if<Guess>(&m.submission);
    if (prior && !m.feedback.is_invalid() && prior->same_as(guess)) {
      return invalid(InvalidReason::DuplicateGuess);
    }
  }

  // All four words are unsolved, so only unsolved categories can match.
  int best = 0;
  const Category* best_cat = nullptr;
  for (const auto& cat : puzzle_.categories()) {
    int overlap = 0;
    for (const auto& w : guess.words) overlap += cat.contains(w) ? 1 : 0;
    if (overlap > best) {
      best = overlap;
      best_cat = &cat;
    }
  }

  Feedback fb;
  if (best == 4) {
    fb = Feedback::correct(*best_cat);
    solved_.push_back(*best_cat);
    std::erase_if(remaining_, [&](const Word& w) { return best_cat->contains(w); });
    if (solved_.size() == 4) status_ = GameStatus::Won;
  } else {
    fb = best == 3 ? Feedback::nearly_correct() : Feedback::incorrect();
    ++incorrect_count_;
    if (incorrect_count_ >= config_.max_incorrect) status_ = GameStatus::Lost;
  }
  return record({guess, fb});
}

Feedback GameState::submit_partition(const PartitionGuess& partition) {
  require_playable(Variant::AllInOne);
  auto invalid = [&](InvalidReason r) { return record({partition, Feedback::invalid(r)}); };

  if (partition.groups.size() != 4) return invalid(InvalidReason::MalformedPartition);
  std::set<Word> covered;
  for (const auto& g : partition.groups) {
    if (g.words.size() != 4) return invalid(InvalidReason::MalformedPartition);
    for (const auto& w : g.words) {
      if (!covered.insert(w).second) return invalid(InvalidReason::MalformedPartition);
    }
  }
  for (const auto& w : covered) {
    if (!puzzle_.contains(w)) return invalid(InvalidReason::MalformedPartition);
  }
  for (const auto& m : history_) {
    const auto* prior = std::get_if<PartitionGuess>(&m.submission);
    if (prior && !m.feedback.is_invalid() && prior->same_as(partition)) {
      return invalid(InvalidReason::DuplicateGuess);
    }
  }

  bool all_match = std::all_of(partition.groups.begin(), partition.groups.end(), [&](const Guess& g) {
    auto c = puzzle_.color_of(g.words.front());
    const auto& cat = puzzle_.category(*c);
    return std::all_of(g.words.begin(), g.words.end(), [&](const Word& w) { return cat.contains(w); });
  });

  Feedback fb;
  if (all_match) {
    fb = Feedback::all_correct();
    solved_.clear();
    for (const auto& cat : puzzle_.categories()) solved_.push_back(cat);
    remaining_.clear();
    status_ = GameStatus::Won;
  } else {
    fb = Feedback::not_all_correct();
    ++incorrect_count_;
    if (incorrect_count_ >= config_.max_incorrect) status_ = GameStatus::Lost;
  }
  return record({partition, fb});
}

Guess GameState::forced_final_guess() const {
  if (remaining_.size() != 4) {
    throw GameError("forced_final_guess requires exactly 4 remaining words, have " +
                    std::to_string(remaining_.size()));
  }
  return Guess(remaining_);
}

}  // namespace connections
