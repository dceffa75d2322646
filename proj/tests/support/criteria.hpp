#pragma once

// Randomized checks shared by the unit tests and the acceptance binary.

#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace testsupport {

struct TrialSummary {
  int trials = 0;
  int agreed = 0;
  std::string first_mismatch;
  bool all_agree() const { return trials > 0 && agreed == trials; }
};

inline std::string feedback_class(const Feedback& f) {
  switch (f.kind) {
    case FeedbackKind::Correct: return "correct";
    case FeedbackKind::NearlyCorrect: return "nearly_correct";
    case FeedbackKind::Incorrect: return "incorrect";
    default: return "invalid";
  }
}

// Each trial: random fixture puzzle, a random valid history (some solved
// categories, some wrong guesses), then one random probe guess. The probe
// mixes near-miss groups, arbitrary picks and several invalid shapes.
inline TrialSummary game_oracle_trials(int n, std::uint64_t seed) {
  const auto& puzzles = fixture_puzzles();
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
  TrialSummary s;

  for (int trial = 0; trial < n; ++trial) {
    const Puzzle& puzzle = puzzles[pick(puzzles.size())];
    auto state = GameState::new_game(puzzle, {Variant::Iterative, 1000, WordOrder::shuffled(rng())});
    std::vector<std::string> solved_names;
    std::vector<std::set<std::string>> prior;

    auto submit = [&](const std::vector<std::string>& words) {
      std::vector<Word> ws;
      for (const auto& w : words) ws.emplace_back(w);
      auto fb = state.submit_guess(Guess(ws));
      if (!fb.is_invalid()) prior.emplace_back(words.begin(), words.end());
      if (fb.kind == FeedbackKind::Correct) solved_names.push_back(fb.category->name);
      return fb;
    };

    const auto cats = puzzle.categories();
    const std::size_t solve_count = pick(4);
    std::vector<std::size_t> order{0, 1, 2, 3};
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < solve_count; ++i) {
      std::vector<std::string> g;
      for (const auto& w : cats[order[i]].words) g.push_back(w.text());
      submit(g);
    }
    const std::size_t wrong_count = pick(3);
    for (std::size_t i = 0; i < wrong_count; ++i) {
      auto rem = state.remaining();
      if (rem.size() < 8) break;
      std::shuffle(rem.begin(), rem.end(), rng);
      submit({rem[0].text(), rem[1].text(), rem[2].text(), rem[3].text()});
    }

    std::vector<std::string> probe;
    auto rem = state.remaining();
    std::vector<std::string> all;
    for (const auto& w : puzzle.grouped_words()) all.push_back(w.text());
    switch (pick(9)) {
      case 0:
      case 1: {  // three from one unsolved category plus one other
        std::vector<const Category*> open;
        for (const auto& c : cats)
          if (state.is_remaining(c.words[0])) open.push_back(&c);
        const Category& c = *open[pick(open.size())];
        std::vector<std::string> in;
        for (const auto& w : c.words) in.push_back(w.text());
        std::shuffle(in.begin(), in.end(), rng);
        probe = {in[0], in[1], in[2]};
        probe.push_back(pick(2) ? in[3] : rem[pick(rem.size())].text());
        break;
      }
      case 2:
      case 3:
      case 4:  // any four remaining (may repeat a word)
        for (int k = 0; k < 4; ++k) probe.push_back(rem[pick(rem.size())].text());
        break;
      case 5:  // any four from the whole puzzle (may include solved words)
        for (int k = 0; k < 4; ++k) probe.push_back(all[pick(all.size())]);
        break;
      case 6: {  // wrong arity
        std::size_t k = pick(2) ? 3 : 5;
        for (std::size_t i = 0; i < k; ++i) probe.push_back(rem[pick(rem.size())].text());
        break;
      }
      case 7:  // unknown word
        for (int k = 0; k < 3; ++k) probe.push_back(rem[pick(rem.size())].text());
        probe.push_back("NOT A PUZZLE WORD");
        break;
      default:  // repeat of an earlier accepted guess, reordered
        if (!prior.empty()) {
          const auto& p = prior[pick(prior.size())];
          probe.assign(p.begin(), p.end());
          std::shuffle(probe.begin(), probe.end(), rng);
        } else {
          for (int k = 0; k < 4; ++k) probe.push_back(rem[pick(rem.size())].text());
        }
    }

    auto expected = oracle_feedback(puzzle, solved_names, prior, probe);
    auto got = feedback_class(submit(probe));
    ++s.trials;
    if (got == expected.kind) {
      ++s.agreed;
    } else if (s.first_mismatch.empty()) {
      s.first_mismatch = "puzzle " + puzzle.id() + ": engine " + got + ", oracle " + expected.kind;
    }
  }
  return s;
}

// 8 words in two categories with random vectors; the solver's greedy
// sequence must equal the materialize-and-sort oracle.
inline TrialSummary ranking_oracle_trials(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TrialSummary s;
  for (int trial = 0; trial < n; ++trial) {
    const std::size_t dim = 2 + rng() % 6;
    std::vector<int> perm{0, 1, 2, 3, 4, 5, 6, 7};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::set<int>> categories{{perm[0], perm[1], perm[2], perm[3]}, {perm[4], perm[5], perm[6], perm[7]}};

    std::vector<Word> words;
    std::vector<std::vector<double>> vecs;
    EmbeddingTable table("random", dim);
    for (int i = 0; i < 8; ++i) {
      words.emplace_back("W" + std::to_string(i));
      vecs.push_back(random_vector(rng, dim));
      table.add(words.back(), vecs.back());
    }
    SimilarityMatrix matrix(words, table);

    std::vector<std::array<int, 4>> got;
    for (const auto& g : greedy_group_sequence(matrix, [&](const Group& g) {
           std::set<int> gs(g.begin(), g.end());
           bool hit = std::find(categories.begin(), categories.end(), gs) != categories.end();
           return hit ? GroupVerdict::Correct : GroupVerdict::Wrong;
         })) {
      got.push_back({g[0], g[1], g[2], g[3]});
    }
    auto expected = oracle_greedy(vecs, categories);
    ++s.trials;
    if (got == expected) {
      ++s.agreed;
    } else if (s.first_mismatch.empty()) {
      s.first_mismatch = "trial " + std::to_string(trial) + ": sequence lengths " + std::to_string(got.size()) +
                         " vs " + std::to_string(expected.size());
    }
  }
  return s;
}

// Random canonical partitions of 16 words (uniform over the enumeration)
// scored two ways.
inline double max_partition_score_error(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Word> words;
  for (int i = 0; i < 16; ++i) words.emplace_back("W" + std::to_string(i));
  auto table = random_table(words, rng, 5);
  SimilarityMatrix matrix(words, table);

  std::vector<std::vector<double>> vecs;
  for (const auto& w : words) {
    auto v = table.at(w);
    vecs.emplace_back(v.begin(), v.end());
  }

  const auto total = partition_count(16);
  std::set<std::uint64_t> wanted;
  while (wanted.size() < static_cast<std::size_t>(n)) wanted.insert(rng() % total);
  double worst = 0.0;
  std::uint64_t ordinal = 0;
  for_each_partition(16, [&](const Partition& p) {
    if (wanted.count(ordinal++) == 0) return;
    double independent = 0.0;
    for (const auto& g : p.view()) {
      double s = 0.0;
      for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) s += oracle_cosine(vecs[g[x]], vecs[g[y]]);
      independent += s / 6.0;
    }
    worst = std::max(worst, std::fabs(score_partition(p, matrix) - independent));
  });
  return worst;
}

}  // namespace testsupport
