#include "connections/eval.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "connections/dataset.hpp"
#include "connections/embed_solver.hpp"

namespace connections {
namespace {

Transcript error_transcript(const Puzzle& puzzle, const GameConfig& config, const std::string& what) {
  Transcript t;
  t.puzzle_id = puzzle.id();
  t.seed = config.word_order.seed;
  t.config = config;
  t.outcome = Outcome::Error;
  t.error = what;
  return t;
}

// Grouped order ignores the seed, but it still labels the run and seeds sampling.
GameConfig with_seed(GameConfig c, std::uint64_t seed) {
  c.word_order.seed = seed;
  return c;
}

std::string first_guess_class(FeedbackKind k) {
  switch (k) {
    case FeedbackKind::Correct:
    case FeedbackKind::AllCorrect: return "correct";
    case FeedbackKind::NearlyCorrect: return "nearly_correct";
    default: return "incorrect";
  }
}

}  // namespace

std::vector<Transcript> run_batch(const std::vector<Puzzle>& puzzles,
                                  const std::vector<std::uint64_t>& seeds, const GameConfig& base,
                                  const EpisodeFn& episode, const BatchOptions& options) {
  if (seeds.empty()) throw std::invalid_argument("run_batch needs at least one seed");
  const std::size_t per_puzzle = options.seed_independent ? 1 : seeds.size();
  const std::size_t jobs = puzzles.size() * per_puzzle;
  std::vector<Transcript> played(jobs);

  auto run_job = [&](std::size_t j) {
    const auto& puzzle = puzzles[j / per_puzzle];
    auto config = with_seed(base, seeds[j % per_puzzle]);
    try {
      played[j] = episode(puzzle, config);
    } catch (const std::exception& e) {
      played[j] = error_transcript(puzzle, config, e.what());
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(jobs)));
  if (threads <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs; j = next++) run_job(j);
      });
    }
  }

  if (!options.seed_independent) return played;
  std::vector<Transcript> out;
  out.reserve(puzzles.size() * seeds.size());
  for (std::size_t p = 0; p < puzzles.size(); ++p) {
    for (auto seed : seeds) {
      auto t = played[p];
      t.seed = seed;
      t.config = with_seed(t.config, seed);
      out.push_back(std::move(t));
    }
  }
  return out;
}

void RunConfig::validate() const {
  if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
  game.validate();
  if (sweep_budget && *sweep_budget < 1) throw std::invalid_argument("sweep budget must be >= 1");
  if (const auto* llm = std::get_if<LlmSolverSpec>(&solver)) {
    llm->params.validate();
    if (sweep_budget) throw std::invalid_argument("allowance sweeps are not supported for LLM solvers");
  }
}

GameConfig RunConfig::effective_game() const {
  auto g = game;
  if (sweep_budget) g.max_incorrect = *sweep_budget;
  return g;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["dataset"] = dataset_path.string();
  j["seeds"] = seeds;
  j["game"] = connections::to_json(game);
  if (sweep_budget) j["sweep_budget"] = *sweep_budget;
  if (const auto* e = std::get_if<EmbedSolverSpec>(&solver)) {
    j["solver"] = {{"kind", "embed"}, {"embeddings", e->table_path.string()}};
  } else {
    const auto& l = std::get<LlmSolverSpec>(solver);
    j["solver"] = {{"kind", "llm"},
                   {"model", l.params.model_name},
                   {"temperature", l.params.temperature},
                   {"max_invalid", l.params.max_invalid},
                   {"chain_of_thought", l.params.chain_of_thought},
                   {"word_list_style", std::string(to_string(l.params.word_list_style))},
                   {"initial_role", std::string(to_string(l.params.initial_role))},
                   {"transport", l.transport == TransportKind::Replay ? "replay" : "http"}};
    if (l.transport == TransportKind::Replay) j["solver"]["fixture_dir"] = l.fixture_dir.string();
    else j["solver"]["endpoint"] = l.http.base_url + l.http.path;
  }
  return j;
}

std::filesystem::path session_fixture_path(const std::filesystem::path& dir, const std::string& puzzle_id,
                                           std::uint64_t seed) {
  return dir / (puzzle_id + "_seed" + std::to_string(seed) + ".json");
}

std::vector<Transcript> run_eval(const RunConfig& config) {
  config.validate();
  auto puzzles = load_dataset(config.dataset_path);
  const auto game = config.effective_game();

  if (const auto* spec = std::get_if<EmbedSolverSpec>(&config.solver)) {
    auto table = EmbeddingTable::load(spec->table_path);
    EpisodeFn fn = [&](const Puzzle& p, const GameConfig& c) {
      return c.variant == Variant::Iterative ? solve_iterative(p, table, c) : solve_challenge(p, table, c);
    };
    return run_batch(puzzles, config.seeds, game, fn, {true, config.threads});
  }

  const auto& spec = std::get<LlmSolverSpec>(config.solver);
  auto limiter = std::make_shared<RequestLimiter>(spec.max_concurrent, spec.min_request_interval);
  EpisodeFn fn = [&](const Puzzle& p, const GameConfig& c) {
    auto params = spec.params;
    params.sampling_seed = static_cast<std::int64_t>(c.word_order.seed);
    if (spec.transport == TransportKind::Replay) {
      ReplayTransport replay(SessionFixture::load(session_fixture_path(spec.fixture_dir, p.id(), c.word_order.seed)));
      return play(p, c, params, replay);
    }
    HttpChatTransport http(spec.http, limiter);
    if (!spec.capture_dir) return play(p, c, params, http);
    CapturingTransport capture(http);
    auto t = play(p, c, params, capture);
    capture.fixture().save(session_fixture_path(*spec.capture_dir, p.id(), c.word_order.seed));
    return t;
  };
  return run_batch(puzzles, config.seeds, game, fn, {false, config.threads});
}

AggregateReport aggregate(const std::vector<Transcript>& transcripts) {
  if (transcripts.empty()) throw std::invalid_argument("aggregate needs at least one transcript");
  AggregateReport r;
  r.transcripts = transcripts.size();
  for (auto k : {"correct", "nearly_correct", "incorrect"}) r.first_guess[k] = {};
  for (auto o : {Outcome::Won, Outcome::Lost, Outcome::AbortedInvalid, Outcome::TransportFailure, Outcome::Error}) {
    r.outcomes[std::string(to_string(o))] = 0;
  }

  for (const auto& t : transcripts) {
    const bool won = t.won();
    ++r.overall.total;
    r.overall.successes += won ? 1 : 0;
    ++r.outcomes[std::string(to_string(t.outcome))];

    auto& summary = r.per_puzzle[t.puzzle_id];
    ++summary.runs;
    summary.wins += won ? 1 : 0;
    for (Color c : kAllColors) {
      const bool solved = t.solved_color(c);
      ++r.per_color[index_of(c)].total;
      r.per_color[index_of(c)].successes += solved ? 1 : 0;
      summary.color_solves[index_of(c)] += solved ? 1 : 0;
    }

    if (auto first = t.first_valid_feedback()) {
      auto& rate = r.first_guess[first_guess_class(*first)];
      ++rate.total;
      rate.successes += won ? 1 : 0;
    } else {
      ++r.first_guess_excluded;
    }
  }
  return r;
}

std::optional<int> SweepCurve::first_reaching(double fraction) const {
  for (const auto& p : points) {
    if (p.puzzles.total > 0 && p.puzzles.value() >= fraction) return p.allowed_incorrect;
  }
  return std::nullopt;
}

SweepCurve sweep_allowance(const std::vector<Transcript>& transcripts, int budget) {
  if (budget < 0) throw std::invalid_argument("sweep budget must be non-negative");
  for (const auto& t : transcripts) {
    if (t.config.max_incorrect != budget) {
      throw std::invalid_argument("transcript for '" + t.puzzle_id + "' was run with budget " +
                                  std::to_string(t.config.max_incorrect) + ", expected " +
                                  std::to_string(budget));
    }
    if (t.max_invalid > 0) {
      throw std::invalid_argument("allowance sweeps need a deterministic solver; '" + t.solver +
                                  "' depends on the budget");
    }
  }
  SweepCurve curve;
  curve.budget = budget;
  for (int k = 0; k <= budget; ++k) {
    CurvePoint p;
    p.allowed_incorrect = k;
    for (const auto& t : transcripts) {
      ++p.puzzles.total;
      p.puzzles.successes += (t.won() && t.incorrect_count <= k) ? 1 : 0;
      for (Color c : kAllColors) {
        auto& rate = p.colors[index_of(c)];
        ++rate.total;
        rate.successes += std::any_of(t.solved.begin(), t.solved.end(), [&](const CategorySolve& s) {
          return s.color == c && s.incorrect_before <= k;
        }) ? 1 : 0;
      }
    }
    curve.points.push_back(std::move(p));
  }
  return curve;
}

namespace {

std::vector<double> samples(const std::vector<Transcript>& transcripts, bool per_puzzle_mean,
                            const std::function<bool(const Transcript&)>& hit) {
  if (!per_puzzle_mean) {
    std::vector<double> out;
    for (const auto& t : transcripts) out.push_back(hit(t) ? 1.0 : 0.0);
    return out;
  }
  std::map<std::string, std::pair<double, double>> by_puzzle;
  for (const auto& t : transcripts) {
    auto& [hits, runs] = by_puzzle[t.puzzle_id];
    hits += hit(t) ? 1.0 : 0.0;
    runs += 1.0;
  }
  std::vector<double> out;
  for (const auto& [id, hr] : by_puzzle) out.push_back(hr.first / hr.second);
  return out;
}

}  // namespace

std::vector<double> success_samples(const std::vector<Transcript>& transcripts, bool per_puzzle_mean) {
  return samples(transcripts, per_puzzle_mean, [](const Transcript& t) { return t.won(); });
}

std::vector<double> color_samples(const std::vector<Transcript>& transcripts, Color color, bool per_puzzle_mean) {
  return samples(transcripts, per_puzzle_mean, [color](const Transcript& t) { return t.solved_color(color); });
}

}  // namespace connections
