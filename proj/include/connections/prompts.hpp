#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "connections/game.hpp"

namespace connections {

class PromptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PromptKind {
  Initial,
  Correct,
  NearlyCorrect,
  Incorrect,
  Invalid,
  InitialAllInOne,
  IncorrectAllInOne,
  InvalidAllInOne,
  Replication,
};

std::string_view to_string(PromptKind kind);

// Placeholders: {PUZZLE_WORDS}, {CHAIN_OF_THOUGHT_PROMPT}, {CATEGORY_NAME},
// {CATEGORY_COLOR}.
struct PromptTemplates {
  std::string initial_iterative;
  std::string chain_of_thought_insert;
  std::string correct_feedback;
  std::string nearly_correct_feedback;
  std::string incorrect_feedback;
  std::string invalid_feedback;
  std::string initial_all_in_one;
  std::string incorrect_all_in_one;
  std::string invalid_all_in_one;
  std::string replication_prompt;

  // The published prompt set, verbatim (including its typos).
  static const PromptTemplates& standard();

  const std::string& get(PromptKind kind) const;
};

enum class WordListStyle { CommaSeparated, NewlineSeparated, Bracketed };
std::string_view to_string(WordListStyle s);
std::optional<WordListStyle> parse_word_list_style(std::string_view text);

std::string render_word_list(std::span<const Word> words, WordListStyle style);

// Substitutes {NAME} placeholders. Throws PromptError if any {UPPER_CASE}
// placeholder survives.
std::string fill_template(std::string_view tpl, const std::map<std::string, std::string>& values);

struct PromptOptions {
  bool chain_of_thought = false;
  WordListStyle word_list_style = WordListStyle::CommaSeparated;
  const PromptTemplates* templates = &PromptTemplates::standard();
};

// Renders `kind` for the current game. {PUZZLE_WORDS} is the remaining words
// in presented order; category fields come from the last feedback. Throws
// PromptError when `kind` does not fit the variant or the last feedback.
std::string render_prompt(PromptKind kind, const GameState& state, const PromptOptions& options);

// Prompt that follows `feedback` in the given variant.
PromptKind next_prompt_kind(Variant variant, const Feedback& feedback);

}  // namespace connections
