#include "connections/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "connections/dataset.hpp"

namespace connections {

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw EmbeddingError("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw EmbeddingError("cosine: zero-norm vector");
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

EmbeddingTable::EmbeddingTable(std::string model_name, std::size_t dim)
    : model_name_(std::move(model_name)), dim_(dim) {
  if (dim_ == 0) throw EmbeddingError("embedding dim must be positive");
}

void EmbeddingTable::add(const Word& word, std::vector<double> vector) {
  if (vector.size() != dim_) {
    throw EmbeddingError("vector for '" + word.text() + "' has length " +
                         std::to_string(vector.size()) + ", expected " + std::to_string(dim_));
  }
  double norm = 0.0;
  for (double x : vector) {
    if (!std::isfinite(x)) throw EmbeddingError("vector for '" + word.text() + "' is not finite");
    norm += x * x;
  }
  if (norm == 0.0) throw EmbeddingError("vector for '" + word.text() + "' has zero norm");
  vectors_[word.text()] = std::move(vector);
}

std::span<const double> EmbeddingTable::at(const Word& word) const {
  auto it = vectors_.find(word.text());
  if (it == vectors_.end()) {
    throw EmbeddingError("no embedding for '" + word.text() + "' in model '" + model_name_ + "'");
  }
  return it->second;
}

void EmbeddingTable::require(std::span<const Word> words) const {
  std::string missing;
  for (const auto& w : words) {
    if (!contains(w)) missing += (missing.empty() ? "" : ", ") + w.text();
  }
  if (!missing.empty()) {
    throw EmbeddingError("model '" + model_name_ + "' has no embedding for: " + missing);
  }
}

EmbeddingTable EmbeddingTable::from_json(const nlohmann::json& doc) {
  try {
    EmbeddingTable table(doc.at("model").get<std::string>(), doc.at("dim").get<std::size_t>());
    for (const auto& [word, vec] : doc.at("vectors").items()) {
      table.add(Word(word), vec.get<std::vector<double>>());
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw EmbeddingError(std::string("malformed embedding file: ") + e.what());
  } catch (const PuzzleError& e) {
    throw EmbeddingError(std::string("malformed embedding file: ") + e.what());
  }
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  auto text = read_text_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw EmbeddingError("cannot parse '" + path.string() + "': " + e.what());
  }
  return from_json(doc);
}

nlohmann::json EmbeddingTable::to_json() const {
  nlohmann::json vectors = nlohmann::json::object();
  for (const auto& [word, vec] : vectors_) vectors[word] = vec;
  return {{"model", model_name_}, {"dim", dim_}, {"vectors", vectors}};
}

SimilarityMatrix::SimilarityMatrix(std::vector<Word> words, const EmbeddingTable& table)
    : words_(std::move(words)) {
  table.require(words_);
  const std::size_t n = words_.size();
  entries_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    entries_[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double c = cosine(table.at(words_[i]), table.at(words_[j]));
      entries_[i * n + j] = c;
      entries_[j * n + i] = c;
    }
  }
}

SimilarityMatrix::SimilarityMatrix(std::vector<Word> words, std::vector<double> entries)
    : words_(std::move(words)), entries_(std::move(entries)) {
  const std::size_t n = words_.size();
  if (entries_.size() != n * n) throw EmbeddingError("similarity matrix is not n x n");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (entries_[i * n + j] != entries_[j * n + i]) {
        throw EmbeddingError("similarity matrix is not symmetric");
      }
    }
  }
}

SimilarityMatrix SimilarityMatrix::subset(std::span<const std::size_t> indices) const {
  const std::size_t n = words_.size();
  const std::size_t m = indices.size();
  std::vector<Word> words;
  std::vector<double> entries(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    words.push_back(words_.at(indices[a]));
    for (std::size_t b = 0; b < m; ++b) entries[a * m + b] = entries_[indices[a] * n + indices[b]];
  }
  return SimilarityMatrix(std::move(words), std::move(entries));
}

}  // namespace connections
