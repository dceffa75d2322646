#include "connections/puzzle.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace connections {

std::string Word::canonicalize(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::toupper(uc)));
  }
  return out;
}

Word::Word(std::string_view raw) : text_(canonicalize(raw)) {
  if (text_.empty()) {
    throw PuzzleError("word is empty after canonicalization");
  }
}

std::ostream& operator<<(std::ostream& out, const Word& word) {
  return out << word.text();
}

std::string_view to_string(Color color) {
  switch (color) {
    case Color::Yellow: return "yellow";
    case Color::Green: return "green";
    case Color::Blue: return "blue";
    case Color::Purple: return "purple";
  }
  return "unknown";
}

std::optional<Color> parse_color(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (Color c : kAllColors) {
    if (to_string(c) == lower) return c;
  }
  return std::nullopt;
}

bool Category::contains(const Word& word) const {
  return std::find(words.begin(), words.end(), word) != words.end();
}

Puzzle::Puzzle(std::string id, std::optional<std::string> date,
               std::vector<Category> categories)
    : id_(std::move(id)), date_(std::move(date)) {
  auto fail = [this](const std::string& rule) {
    throw PuzzleError("puzzle '" + id_ + "': " + rule);
  };
  if (id_.empty()) throw PuzzleError("puzzle id is empty");
  if (categories.size() != 4) {
    fail("expected 4 categories, found " + std::to_string(categories.size()));
  }
  std::array<bool, 4> seen{};
  std::set<Word> all;
  for (auto& cat : categories) {
    auto slot = index_of(cat.color);
    if (seen[slot]) fail("duplicate color " + std::string(to_string(cat.color)));
    seen[slot] = true;
    for (const auto& w : cat.words) {
      if (w.empty()) fail("empty word in category '" + cat.name + "'");
      if (!all.insert(w).second) fail("word '" + w.text() + "' appears more than once");
    }
    categories_[slot] = std::move(cat);
  }
}

std::vector<Word> Puzzle::grouped_words() const {
  std::vector<Word> out;
  out.reserve(16);
  for (const auto& cat : categories_) {
    out.insert(out.end(), cat.words.begin(), cat.words.end());
  }
  return out;
}

std::optional<Color> Puzzle::color_of(const Word& word) const {
  for (const auto& cat : categories_) {
    if (cat.contains(word)) return cat.color;
  }
  return std::nullopt;
}

}  // namespace connections
