#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "connections/embedding.hpp"
#include "connections/game.hpp"
#include "connections/transcript.hpp"

namespace connections {

// Four ascending indices into a word list.
using Group = std::array<std::uint8_t, 4>;

inline constexpr std::size_t kMaxEnumeratedWords = 16;

// All 4-subsets of {0..n-1} in lexicographic order. Requires 4 <= n <= 255.
std::vector<Group> enumerate_groups(std::size_t n);

// Mean of the six pairwise similarities inside the group.
double score_group(const Group& group, const SimilarityMatrix& matrix);

struct ScoredGroup {
  Group members{};
  double score = 0.0;
  bool operator==(const ScoredGroup&) const = default;
};

// Descending score; ties in lexicographic member order.
std::vector<ScoredGroup> rank_groups(const SimilarityMatrix& matrix);
std::vector<ScoredGroup> rank_groups(const std::vector<Word>& words, const EmbeddingTable& table);

// n/4 disjoint groups covering {0..n-1}. Canonical: group k's smallest index
// is the smallest index not in groups 0..k-1, so each set partition has
// exactly one representation.
struct Partition {
  std::array<Group, 4> groups{};
  std::uint8_t size = 0;

  std::span<const Group> view() const { return {groups.data(), size}; }
  bool operator==(const Partition&) const = default;
};

// Number of canonical partitions of n words into groups of four.
std::uint64_t partition_count(std::size_t n);

// Visits every canonical partition of n words (n in {4, 8, 12, 16}) in
// lexicographic order. Throws std::invalid_argument for other n.
void for_each_partition(std::size_t n, const std::function<void(const Partition&)>& visit);

std::vector<Partition> enumerate_partitions(std::size_t n);

struct ScoredPartition {
  Partition partition;
  double score = 0.0;
  // Position in enumeration order; the tie-break.
  std::uint32_t ordinal = 0;
};

double score_partition(const Partition& p, const SimilarityMatrix& matrix);

// Partitions by descending summed group score, ties by enumeration order.
// With `top_k`, only the first top_k entries of that order are returned.
std::vector<ScoredPartition> rank_partitions(const SimilarityMatrix& matrix,
                                             std::optional<std::size_t> top_k = std::nullopt);

// Verdict on one proposed group during greedy play.
enum class GroupVerdict { Correct, Wrong, Stop };

// Greedy iterative search over the matrix's words. Proposes the best-ranked
// group not yet proposed; after a Correct verdict re-ranks the words still
// unsolved. Returns proposals (as indices into `matrix`) in order. Stops on
// a Stop verdict, when every word is solved, or when candidates run out.
std::vector<Group> greedy_group_sequence(
    const SimilarityMatrix& matrix,
    const std::function<GroupVerdict(const Group&)>& judge);

// Word order used for embedding ranking. Sorted canonical text, so results
// never depend on the shuffle seed.
std::vector<Word> ranking_order(const Puzzle& puzzle);

Transcript solve_iterative(const Puzzle& puzzle, const EmbeddingTable& table,
                           const GameConfig& config);
Transcript solve_iterative(const Puzzle& puzzle, const SimilarityMatrix& matrix,
                           const GameConfig& config, std::string solver_name);

Transcript solve_challenge(const Puzzle& puzzle, const EmbeddingTable& table,
                           const GameConfig& config);
Transcript solve_challenge(const Puzzle& puzzle, const SimilarityMatrix& matrix,
                           const GameConfig& config, std::string solver_name);

}  // namespace connections
