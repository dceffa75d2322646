#include "connections/prompts.hpp"

#include <cctype>

namespace connections {
namespace {

constexpr std::string_view kInitialIterative = R"tpl(I want you to solve a daily word puzzle that finds commonalities between words. There are 16 words, which form 4 groups of 4 words. Each group has some common theme that links the words. You must use each of the 16 words, and use each word only once.

Each group of 4 words are linked together in some way. The connection between words can be simple. An example of a simple connection would be "types of fish": Bass, Flounder, Salmon, Trout. Categories can also be more complex, and require abstract or lateral thinking.
An example of this type of connection would be "things that start with FIRE": Ant, Drill, Island, Opal.

Provide the one group you are most sure of as your final answer. I will enter this into the puzzle and give you feedback: I will tell you whether it is correct, incorrect, or nearly correct (3/4 words).
Then we will continue until the puzzled is solved, or you lose.

Format your answer as:
GROUP NAME: [WORD, WORD, WORD, WORD]

Some rules:
{CHAIN_OF_THOUGHT_PROMPT}- Give your final answer in the format described above. Do not add any additional text to your final answer, just the group name and the 4 words. 

Here are the starting 16 words:
{PUZZLE_WORDS})tpl";

constexpr std::string_view kChainOfThought = R"tpl(- First, briefly summarize the rules and objective of the puzzle (in no more than 50 words)
- Next, come up with a category to which four of the words belong and briefly explain why you think they belong to that category:
)tpl";

constexpr std::string_view kCorrect = R"tpl(The response from the game was: Correct! The category was {CATEGORY_NAME}. Diffulty: {CATEGORY_COLOR}

Continue to solve the puzzle. 
Format your answer as:
GROUP NAME: [WORD, WORD, WORD, WORD]

Here are the remaining words:
{PUZZLE_WORDS})tpl";

constexpr std::string_view kNearlyCorrect = R"tpl(The response from the game was: Nearly Correct. Three of your words are in a group, but one is not in the same group.

Continue to solve the puzzle. Again, provide one group you are most certain of. MAKE SURE YOU DON'T REPEAT ANY OF YOUR PREVIOUS GUESSES.
Format your answer as:
GROUP NAME: [WORD, WORD, WORD, WORD]

Here are the remaining words:
{PUZZLE_WORDS})tpl";

constexpr std::string_view kIncorrect = R"tpl(The response from the game was: Incorrect guess.

Let's continue to solve the puzzle. MAKE SURE YOU DON'T REPEAT ANY OF YOUR PREVIOUS GUESSES.
Format your answer as:
GROUP NAME: [WORD, WORD, WORD, WORD]

Here are the remaining words:
{PUZZLE_WORDS})tpl";

constexpr std::string_view kInvalid = R"tpl(The response from the game was: Invalid guess. Please try again.

Your answer wasn't formatted correctly. Try again, and follow the formatting instructions carefully.
Format your answer as:
GROUP NAME: [WORD, WORD, WORD, WORD]

Here are the remaining words:
{PUZZLE_WORDS})tpl";

constexpr std::string_view kInitialAllInOne = R"tpl(I want you to solve a daily word puzzle that finds commonalities between words. There are 16 words, which form 4 groups of 4 words. Each group has some common theme that links the words. You must use each of the 16 words, and use each word only once. Each group of 4 words are linked together in some way. The connection between words can be simple. An example of a simple connection would be "types of fish": Bass, Flounder, Salmon, Trout. Categories can also be more complex, and require abstract or lateral thinking.
An example of this type of connection would be "things that start with FIRE": Ant, Drill, Island, Opal.

Format your final answers as:
GROUP 1 NAME: WORD, WORD, WORD, WORD
GROUP 2 NAME: WORD, WORD, WORD, WORD
GROUP 3 NAME: WORD, WORD, WORD, WORD
GROUP 4 NAME: WORD, WORD, WORD, WORD

Replace each GROUP NAME with a name for the group you create.

Some rules:
- Give your final answers in the format described above. Put each group on a separate line. Do not add any additional text to your final answer, just the group name and the 4 words. 

Here are the starting 16 words:
{PUZZLE_WORDS})tpl";

constexpr std::string_view kIncorrectAllInOne = R"tpl(The response from the game was: Incorrect guess.

Let's continue to solve the puzzle. MAKE SURE YOU DON'T REPEAT ANY OF YOUR PREVIOUS GUESSES.

Format your final answers as:
GROUP 1 NAME: WORD, WORD, WORD, WORD
GROUP 2 NAME: WORD, WORD, WORD, WORD
GROUP 3 NAME: WORD, WORD, WORD, WORD
GROUP 4 NAME: WORD, WORD, WORD, WORD

The remaining words are:
{PUZZLE_WORDS})tpl";

constexpr std::string_view kInvalidAllInOne = R"tpl(The response from the game was: Invalid guess. Please try again.

Your answer wasn't formatted correctly. Try again, and follow the formatting instructions carefully.

Format your final answers as:
GROUP 1 NAME: WORD, WORD, WORD, WORD
GROUP 2 NAME: WORD, WORD, WORD, WORD
GROUP 3 NAME: WORD, WORD, WORD, WORD
GROUP 4 NAME: WORD, WORD, WORD, WORD

The remaining words are:
{PUZZLE_WORDS})tpl";

constexpr std::string_view kReplication = R"tpl(Find 4 groups, each of 4 words that share something in common, out of 16 words. I want to use them to solve a daily word puzzle that finds commonalities between words. The game is a new puzzle featured in The New York Times, inspired by crosswords. You have to use all those 16 words I give you and each word only once.
Format your final answers as:
GROUP 1 NAME: [WORD, WORD, WORD, WORD]
GROUP 2 NAME: [WORD, WORD, WORD, WORD]
GROUP 3 NAME: [WORD, WORD, WORD, WORD]
GROUP 4 NAME: [WORD, WORD, WORD, WORD]

Below are my 16 words: 
{PUZZLE_WORDS})tpl";

bool is_placeholder_char(char c) {
  return std::isupper(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::string_view to_string(PromptKind kind) {
  switch (kind) {
    case PromptKind::Initial: return "initial";
    case PromptKind::Correct: return "correct";
    case PromptKind::NearlyCorrect: return "nearly_correct";
    case PromptKind::Incorrect: return "incorrect";
    case PromptKind::Invalid: return "invalid";
    case PromptKind::InitialAllInOne: return "initial_all_in_one";
    case PromptKind::IncorrectAllInOne: return "incorrect_all_in_one";
    case PromptKind::InvalidAllInOne: return "invalid_all_in_one";
    case PromptKind::Replication: return "replication";
  }
  return "unknown";
}

const PromptTemplates& PromptTemplates::standard() {
  static const PromptTemplates t{
      std::string(kInitialIterative),  std::string(kChainOfThought),
      std::string(kCorrect),           std::string(kNearlyCorrect),
      std::string(kIncorrect),         std::string(kInvalid),
      std::string(kInitialAllInOne),   std::string(kIncorrectAllInOne),
      std::string(kInvalidAllInOne),   std::string(kReplication),
  };
  return t;
}

const std::string& PromptTemplates::get(PromptKind kind) const {
  switch (kind) {
    case PromptKind::Initial: return initial_iterative;
    case PromptKind::Correct: return correct_feedback;
    case PromptKind::NearlyCorrect: return nearly_correct_feedback;
    case PromptKind::Incorrect: return incorrect_feedback;
    case PromptKind::Invalid: return invalid_feedback;
    case PromptKind::InitialAllInOne: return initial_all_in_one;
    case PromptKind::IncorrectAllInOne: return incorrect_all_in_one;
    case PromptKind::InvalidAllInOne: return invalid_all_in_one;
    case PromptKind::Replication: return replication_prompt;
  }
  throw PromptError("unknown prompt kind");
}

std::string_view to_string(WordListStyle s) {
  switch (s) {
    case WordListStyle::CommaSeparated: return "comma";
    case WordListStyle::NewlineSeparated: return "newline";
    case WordListStyle::Bracketed: return "bracketed";
  }
  return "comma";
}

std::optional<WordListStyle> parse_word_list_style(std::string_view text) {
  for (auto s : {WordListStyle::CommaSeparated, WordListStyle::NewlineSeparated, WordListStyle::Bracketed}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::string render_word_list(std::span<const Word> words, WordListStyle style) {
  std::string out;
  const char* sep = style == WordListStyle::NewlineSeparated ? "\n" : ", ";
  if (style == WordListStyle::Bracketed) out += "[";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i].text();
  }
  if (style == WordListStyle::Bracketed) out += "]";
  return out;
}

std::string fill_template(std::string_view tpl, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      std::size_t j = i + 1;
      while (j < tpl.size() && is_placeholder_char(tpl[j])) ++j;
      if (j < tpl.size() && tpl[j] == '}' && j > i + 1) {
        std::string name(tpl.substr(i + 1, j - i - 1));
        auto it = values.find(name);
        if (it == values.end()) throw PromptError("unresolved placeholder {" + name + "}");
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out += tpl[i++];
  }
  return out;
}

PromptKind next_prompt_kind(Variant variant, const Feedback& feedback) {
  if (variant == Variant::AllInOne) {
    return feedback.is_invalid() ? PromptKind::InvalidAllInOne : PromptKind::IncorrectAllInOne;
  }
  switch (feedback.kind) {
    case FeedbackKind::Correct: return PromptKind::Correct;
    case FeedbackKind::NearlyCorrect: return PromptKind::NearlyCorrect;
    case FeedbackKind::Invalid: return PromptKind::Invalid;
    default: return PromptKind::Incorrect;
  }
}

std::string render_prompt(PromptKind kind, const GameState& state, const PromptOptions& options) {
  const bool all_in_one = kind == PromptKind::InitialAllInOne || kind == PromptKind::IncorrectAllInOne ||
                          kind == PromptKind::InvalidAllInOne || kind == PromptKind::Replication;
  if (all_in_one != (state.config().variant == Variant::AllInOne)) {
    throw PromptError(std::string("prompt '") + std::string(to_string(kind)) +
                      "' does not match the " + std::string(to_string(state.config().variant)) +
                      " variant");
  }

  std::map<std::string, std::string> values;
  values["PUZZLE_WORDS"] = render_word_list(state.remaining(), options.word_list_style);
  values["CHAIN_OF_THOUGHT_PROMPT"] =
      options.chain_of_thought ? options.templates->chain_of_thought_insert : std::string();

  if (kind == PromptKind::Correct) {
    const auto& history = state.history();
    if (history.empty() || history.back().feedback.kind != FeedbackKind::Correct) {
      throw PromptError("correct-feedback prompt needs a Correct last feedback");
    }
    const auto& cat = *history.back().feedback.category;
    values["CATEGORY_NAME"] = cat.name;
    values["CATEGORY_COLOR"] = std::string(to_string(cat.color));
  }
  return fill_template(options.templates->get(kind), values);
}

}  // namespace connections
