#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "connections/puzzle.hpp"

namespace connections {

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// u.v / (|u||v|), clamped to [-1, 1]. Throws EmbeddingError on a dimension
// mismatch or a zero-norm input.
double cosine(std::span<const double> u, std::span<const double> v);

// Word vectors for one model. Every vector has length dim(), is finite and
// has nonzero norm; violations are rejected when the table is built.
class EmbeddingTable {
 public:
  EmbeddingTable(std::string model_name, std::size_t dim);

  // File format: {"model": str, "dim": int, "vectors": {"WORD": [..]}}.
  static EmbeddingTable load(const std::filesystem::path& path);
  static EmbeddingTable from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  void add(const Word& word, std::vector<double> vector);

  const std::string& model_name() const { return model_name_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool contains(const Word& word) const { return vectors_.count(word.text()) > 0; }
  // Throws EmbeddingError naming the word when absent.
  std::span<const double> at(const Word& word) const;

  // Throws EmbeddingError listing every word of `words` the table lacks.
  void require(std::span<const Word> words) const;

 private:
  std::string model_name_;
  std::size_t dim_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Pairwise cosine similarities over an ordered word list, computed once.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::vector<Word> words, const EmbeddingTable& table);
  // Direct construction for tests and synthetic inputs; must be square,
  // symmetric and n == words.size().
  SimilarityMatrix(std::vector<Word> words, std::vector<double> entries);

  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * words_.size() + j]; }

  // Matrix restricted to the given indices, in that order.
  SimilarityMatrix subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<Word> words_;
  std::vector<double> entries_;
};

}  // namespace connections
