#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace connections {

// A puzzle word in canonical form: uppercased, trimmed, internal whitespace
// collapsed to single spaces. Never empty.
class Word {
 public:
  Word() = default;
  explicit Word(std::string_view raw);

  static std::string canonicalize(std::string_view raw);

  const std::string& text() const { return text_; }
  bool empty() const { return text_.empty(); }

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::string text_;
};

std::ostream& operator<<(std::ostream& out, const Word& word);

// Difficulty order is the enum order.
enum class Color { Yellow = 0, Green = 1, Blue = 2, Purple = 3 };

inline constexpr std::array<Color, 4> kAllColors = {Color::Yellow, Color::Green,
                                                    Color::Blue, Color::Purple};

std::string_view to_string(Color color);
std::optional<Color> parse_color(std::string_view text);
inline constexpr std::size_t index_of(Color color) {
  return static_cast<std::size_t>(color);
}

struct Category {
  std::string name;
  Color color = Color::Yellow;
  std::array<Word, 4> words;

  bool contains(const Word& word) const;
  bool operator==(const Category&) const = default;
};

class PuzzleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sixteen words in four categories, one per color. Construction validates;
// an existing Puzzle always satisfies its invariants.
class Puzzle {
 public:
  // Throws PuzzleError naming the id and the violated rule.
  Puzzle(std::string id, std::optional<std::string> date,
         std::vector<Category> categories);

  const std::string& id() const { return id_; }
  const std::optional<std::string>& date() const { return date_; }

  // Indexed by color: categories()[0] is yellow.
  const std::array<Category, 4>& categories() const { return categories_; }
  const Category& category(Color color) const {
    return categories_[index_of(color)];
  }

  // Yellow words in file order, then green, blue, purple.
  std::vector<Word> grouped_words() const;

  // Color of the category containing `word`, if any.
  std::optional<Color> color_of(const Word& word) const;
  bool contains(const Word& word) const { return color_of(word).has_value(); }

  bool operator==(const Puzzle&) const = default;

 private:
  std::string id_;
  std::optional<std::string> date_;
  std::array<Category, 4> categories_;
};

}  // namespace connections

template <>
struct std::hash<connections::Word> {
  std::size_t operator()(const connections::Word& w) const noexcept {
    return std::hash<std::string>{}(w.text());
  }
};
