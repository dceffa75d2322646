#include "connections/embed_solver.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

namespace connections {
namespace {

bool ranks_before(const ScoredGroup& a, const ScoredGroup& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.members < b.members;
}

bool ranks_before(const ScoredPartition& a, const ScoredPartition& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.ordinal < b.ordinal;
}

void check_partition_size(std::size_t n) {
  if (n == 0 || n % 4 != 0 || n > kMaxEnumeratedWords) {
    throw std::invalid_argument("partitions need 4, 8, 12 or 16 words, got " + std::to_string(n));
  }
}

// Recursive canonical enumeration over a bitmask of unused indices.
void partition_step(std::uint32_t unused, Partition& p,
                    const std::function<void(const Partition&)>& visit) {
  if (unused == 0) {
    visit(p);
    return;
  }
  const auto first = static_cast<std::uint8_t>(std::countr_zero(unused));
  std::uint32_t rest = unused & ~(1u << first);
  std::vector<std::uint8_t> pool;
  for (std::uint32_t m = rest; m != 0; m &= m - 1) {
    pool.push_back(static_cast<std::uint8_t>(std::countr_zero(m)));
  }
  const std::size_t k = pool.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t c = b + 1; c < k; ++c) {
        p.groups[p.size] = {first, pool[a], pool[b], pool[c]};
        ++p.size;
        partition_step(rest & ~(1u << pool[a]) & ~(1u << pool[b]) & ~(1u << pool[c]), p, visit);
        --p.size;
      }
    }
  }
}

}  // namespace

std::vector<Group> enumerate_groups(std::size_t n) {
  if (n < 4 || n > 255) throw std::invalid_argument("enumerate_groups needs 4 <= n <= 255");
  std::vector<Group> out;
  out.reserve(n * (n - 1) * (n - 2) * (n - 3) / 24);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                         static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)});
  return out;
}

double score_group(const Group& g, const SimilarityMatrix& m) {
  for (auto i : g) {
    if (i >= m.size()) throw std::out_of_range("group index out of range");
  }
  double sum = m(g[0], g[1]) + m(g[0], g[2]) + m(g[0], g[3]) + m(g[1], g[2]) + m(g[1], g[3]) +
               m(g[2], g[3]);
  return sum / 6.0;
}

std::vector<ScoredGroup> rank_groups(const SimilarityMatrix& matrix) {
  std::vector<ScoredGroup> out;
  for (const auto& g : enumerate_groups(matrix.size())) out.push_back({g, score_group(g, matrix)});
  std::sort(out.begin(), out.end(), [](const ScoredGroup& a, const ScoredGroup& b) { return ranks_before(a, b); });
  return out;
}

std::vector<ScoredGroup> rank_groups(const std::vector<Word>& words, const EmbeddingTable& table) {
  return rank_groups(SimilarityMatrix(words, table));
}

std::uint64_t partition_count(std::size_t n) {
  check_partition_size(n);
  // Product over groups of C(remaining - 1, 3): the first free index is fixed.
  std::uint64_t count = 1;
  for (std::size_t r = n; r >= 4; r -= 4) {
    const std::uint64_t m = r - 1;
    count *= m * (m - 1) * (m - 2) / 6;
  }
  return count;
}

void for_each_partition(std::size_t n, const std::function<void(const Partition&)>& visit) {
  check_partition_size(n);
  Partition p;
  partition_step((1u << n) - 1u, p, visit);
}

std::vector<Partition> enumerate_partitions(std::size_t n) {
  std::vector<Partition> out;
  out.reserve(partition_count(n));
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

double score_partition(const Partition& p, const SimilarityMatrix& matrix) {
  double total = 0.0;
  for (const auto& g : p.view()) total += score_group(g, matrix);
  return total;
}

std::vector<ScoredPartition> rank_partitions(const SimilarityMatrix& matrix,
                                             std::optional<std::size_t> top_k) {
  const std::size_t n = matrix.size();
  check_partition_size(n);

  // Each group's score is looked up by its bitmask rather than recomputed.
  std::vector<double> mask_score(std::size_t{1} << n, 0.0);
  for (const auto& g : enumerate_groups(n)) {
    std::uint32_t mask = (1u << g[0]) | (1u << g[1]) | (1u << g[2]) | (1u << g[3]);
    mask_score[mask] = score_group(g, matrix);
  }

  std::vector<ScoredPartition> out;
  out.reserve(partition_count(n));
  std::uint32_t ordinal = 0;
  for_each_partition(n, [&](const Partition& p) {
    double total = 0.0;
    for (const auto& g : p.view()) {
      total += mask_score[(1u << g[0]) | (1u << g[1]) | (1u << g[2]) | (1u << g[3])];
    }
    out.push_back({p, total, ordinal++});
  });

  auto cmp = [](const ScoredPartition& a, const ScoredPartition& b) { return ranks_before(a, b); };
  if (top_k && *top_k < out.size()) {
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(*top_k), out.end(), cmp);
    out.resize(*top_k);
  } else {
    std::sort(out.begin(), out.end(), cmp);
  }
  return out;
}

std::vector<Group> greedy_group_sequence(const SimilarityMatrix& matrix,
                                         const std::function<GroupVerdict(const Group&)>& judge) {
  std::vector<Group> proposals;
  std::set<Group> proposed;
  std::vector<std::size_t> unsolved(matrix.size());
  for (std::size_t i = 0; i < unsolved.size(); ++i) unsolved[i] = i;

  while (unsolved.size() >= 4) {
    auto sub = matrix.subset(unsolved);
    auto ranked = rank_groups(sub);
    bool rerank = false;
    for (const auto& sg : ranked) {
      Group g;
      for (std::size_t k = 0; k < 4; ++k) g[k] = static_cast<std::uint8_t>(unsolved[sg.members[k]]);
      if (!proposed.insert(g).second) continue;
      proposals.push_back(g);
      auto verdict = judge(g);
      if (verdict == GroupVerdict::Stop) return proposals;
      if (verdict == GroupVerdict::Correct) {
        std::erase_if(unsolved, [&](std::size_t i) { return std::find(g.begin(), g.end(), i) != g.end(); });
        rerank = true;
        break;
      }
    }
    if (!rerank) break;  // every candidate tried
  }
  return proposals;
}

std::vector<Word> ranking_order(const Puzzle& puzzle) {
  auto words = puzzle.grouped_words();
  std::sort(words.begin(), words.end());
  return words;
}

Transcript solve_iterative(const Puzzle& puzzle, const SimilarityMatrix& matrix,
                           const GameConfig& config, std::string solver_name) {
  if (config.variant != Variant::Iterative) throw GameError("solve_iterative needs the iterative variant");
  auto state = GameState::new_game(puzzle, config);
  Transcript t;
  t.puzzle_id = puzzle.id();
  t.solver = std::move(solver_name);
  t.seed = config.word_order.seed;
  t.config = config;

  const auto& words = matrix.words();
  greedy_group_sequence(matrix, [&](const Group& g) {
    Guess guess({words[g[0]], words[g[1]], words[g[2]], words[g[3]]});
    auto before = state;
    state.submit_guess(guess);
    record_submission(t, before, state.history().back());
    if (state.finished()) return GroupVerdict::Stop;
    return state.history().back().feedback.kind == FeedbackKind::Correct ? GroupVerdict::Correct
                                                                         : GroupVerdict::Wrong;
  });
  finish_from_state(t, state);
  if (!state.finished()) {
    t.outcome = Outcome::Error;
    t.error = "ran out of candidate groups";
  }
  return t;
}

Transcript solve_iterative(const Puzzle& puzzle, const EmbeddingTable& table, const GameConfig& config) {
  SimilarityMatrix matrix(ranking_order(puzzle), table);
  return solve_iterative(puzzle, matrix, config, "embed:" + table.model_name());
}

Transcript solve_challenge(const Puzzle& puzzle, const SimilarityMatrix& matrix,
                           const GameConfig& config, std::string solver_name) {
  if (config.variant != Variant::AllInOne) throw GameError("solve_challenge needs the challenge variant");
  auto state = GameState::new_game(puzzle, config);
  Transcript t;
  t.puzzle_id = puzzle.id();
  t.solver = std::move(solver_name);
  t.seed = config.word_order.seed;
  t.config = config;

  // Every submission is either the winner or costs one guess, so the first
  // max_incorrect ranked partitions are all that can ever be submitted.
  auto ranked = rank_partitions(matrix, static_cast<std::size_t>(config.max_incorrect));
  const auto& words = matrix.words();
  for (const auto& sp : ranked) {
    if (state.finished()) break;
    PartitionGuess guess;
    for (const auto& g : sp.partition.view()) {
      guess.groups.emplace_back(std::vector<Word>{words[g[0]], words[g[1]], words[g[2]], words[g[3]]});
    }
    auto before = state;
    state.submit_partition(guess);
    record_submission(t, before, state.history().back());
  }
  finish_from_state(t, state);
  return t;
}

Transcript solve_challenge(const Puzzle& puzzle, const EmbeddingTable& table, const GameConfig& config) {
  SimilarityMatrix matrix(ranking_order(puzzle), table);
  return solve_challenge(puzzle, matrix, config, "embed:" + table.model_name());
}

}  // namespace connections
