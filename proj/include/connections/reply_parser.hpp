#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "connections/game.hpp"

namespace connections {

enum class ParseErrorKind {
  NoMatch,
  WrongArity,
  UnknownWord,
  DuplicateWord,
  WordAlreadySolved,
  NotFourGroups,
  NotAPartition,
};

std::string_view to_string(ParseErrorKind kind);

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::NoMatch;
  std::string detail;
  bool operator==(const ParseError&) const = default;
};

// One `NAME: [W, W, ...]` or `NAME: W, W, ...` line, tokens as written.
struct ParsedGroup {
  std::string name;
  std::vector<std::string> tokens;
  bool operator==(const ParsedGroup&) const = default;
};

template <class T>
using ParseResult = std::variant<T, ParseError>;

// Every line of `reply` in answer format, in order. Lines may carry list
// bullets, numbering or markdown emphasis; brackets are optional but an
// unbracketed list needs at least one comma.
std::vector<ParsedGroup> find_group_lines(std::string_view reply);

// Takes the last answer-format line. All four tokens must be distinct
// members of `remaining`; a token that names an already-solved word is
// reported as WordAlreadySolved rather than UnknownWord.
ParseResult<Guess> parse_single_guess(std::string_view reply, const std::set<Word>& remaining,
                                      const std::set<Word>& solved = {});

// Takes the last four answer-format lines; they must partition `remaining`.
ParseResult<PartitionGuess> parse_partition_guess(std::string_view reply,
                                                  const std::set<Word>& remaining);

std::string format_guess(std::string_view group_name, const Guess& guess);
std::string format_partition(const PartitionGuess& partition);

}  // namespace connections
