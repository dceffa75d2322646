#include "connections/reply_parser.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace connections {
namespace {

// NAME: [a, b, c, d]   (optional trailing period)
const std::regex kBracketed(R"(^(.+?)\s*:\s*\[([^\[\]]*)\]\s*\.?\s*$)");
// NAME: a, b, c, d
const std::regex kPlain(R"(^([^:\[\]]+?)\s*:\s*([^:\[\]]*,[^:\[\]]*?)\s*\.?\s*$)");
// Bullets, numbering and heading marks in front of the answer.
const std::regex kLeadIn(R"(^\s*(?:[-*>#]+\s*|\d+[.)]\s+)*)");

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_markup(std::string s) {
  std::erase_if(s, [](char c) { return c == '*' || c == '`'; });
  return s;
}

std::string clean_token(std::string_view raw) {
  std::string t = trim(raw);
  auto is_quote = [](char c) { return c == '"' || c == '\'' || c == '*' || c == '`'; };
  while (!t.empty() && is_quote(t.front())) t.erase(t.begin());
  while (!t.empty() && (is_quote(t.back()) || t.back() == '.')) t.pop_back();
  return trim(t);
}

std::vector<std::string> split_tokens(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto tok = clean_token(part);
    if (!tok.empty()) out.push_back(std::move(tok));
  }
  return out;
}

// Checks arity and membership for one group. Returns the Guess or an error.
ParseResult<Guess> resolve_group(const ParsedGroup& g, const std::set<Word>& remaining,
                                 const std::set<Word>& solved) {
  if (g.tokens.size() != 4) {
    return ParseError{ParseErrorKind::WrongArity,
                      "group '" + g.name + "' has " + std::to_string(g.tokens.size()) + " words"};
  }
  std::vector<Word> words;
  std::set<Word> seen;
  for (const auto& tok : g.tokens) {
    Word w(tok);
    if (!seen.insert(w).second) return ParseError{ParseErrorKind::DuplicateWord, w.text()};
    if (!remaining.count(w)) {
      if (solved.count(w)) return ParseError{ParseErrorKind::WordAlreadySolved, w.text()};
      return ParseError{ParseErrorKind::UnknownWord, w.text()};
    }
    words.push_back(std::move(w));
  }
  return Guess(std::move(words));
}

}  // namespace

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::NoMatch: return "no_match";
    case ParseErrorKind::WrongArity: return "wrong_arity";
    case ParseErrorKind::UnknownWord: return "unknown_word";
    case ParseErrorKind::DuplicateWord: return "duplicate_word";
    case ParseErrorKind::WordAlreadySolved: return "word_already_solved";
    case ParseErrorKind::NotFourGroups: return "not_four_groups";
    case ParseErrorKind::NotAPartition: return "not_a_partition";
  }
  return "unknown";
}

std::vector<ParsedGroup> find_group_lines(std::string_view reply) {
  std::vector<ParsedGroup> out;
  std::stringstream ss{std::string(reply)};
  std::string line;
  while (std::getline(ss, line)) {
    line = strip_markup(std::regex_replace(line, kLeadIn, "", std::regex_constants::format_first_only));
    line = trim(line);
    if (line.empty()) continue;
    std::smatch m;
    if (std::regex_match(line, m, kBracketed) || std::regex_match(line, m, kPlain)) {
      auto name = trim(m[1].str());
      if (name.empty()) continue;
      out.push_back({name, split_tokens(m[2].str())});
    }
  }
  return out;
}

ParseResult<Guess> parse_single_guess(std::string_view reply, const std::set<Word>& remaining,
                                      const std::set<Word>& solved) {
  auto lines = find_group_lines(reply);
  if (lines.empty()) return ParseError{ParseErrorKind::NoMatch, "no line in answer format"};
  return resolve_group(lines.back(), remaining, solved);
}

ParseResult<PartitionGuess> parse_partition_guess(std::string_view reply,
                                                  const std::set<Word>& remaining) {
  auto lines = find_group_lines(reply);
  if (lines.empty()) return ParseError{ParseErrorKind::NoMatch, "no line in answer format"};
  if (lines.size() < 4) {
    return ParseError{ParseErrorKind::NotFourGroups,
                      "found " + std::to_string(lines.size()) + " group lines"};
  }
  PartitionGuess p;
  std::set<Word> used;
  for (auto it = lines.end() - 4; it != lines.end(); ++it) {
    auto r = resolve_group(*it, remaining, {});
    if (auto* err = std::get_if<ParseError>(&r)) return *err;
    auto& g = std::get<Guess>(r);
    for (const auto& w : g.words) {
      if (!used.insert(w).second) {
        return ParseError{ParseErrorKind::NotAPartition, "'" + w.text() + "' appears in two groups"};
      }
    }
    p.groups.push_back(std::move(g));
  }
  if (used != remaining) {
    return ParseError{ParseErrorKind::NotAPartition, "groups do not cover the remaining words"};
  }
  return p;
}

std::string format_guess(std::string_view group_name, const Guess& guess) {
  std::string out(group_name);
  out += ": [";
  for (std::size_t i = 0; i < guess.words.size(); ++i) {
    if (i) out += ", ";
    out += guess.words[i].text();
  }
  return out + "]";
}

std::string format_partition(const PartitionGuess& partition) {
  std::string out;
  for (std::size_t i = 0; i < partition.groups.size(); ++i) {
    if (i) out += "\n";
    out += format_guess("GROUP " + std::to_string(i + 1), partition.groups[i]);
  }
  return out;
}

}  // namespace connections
