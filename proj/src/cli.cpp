#include "connections/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "connections/dataset.hpp"
#include "connections/embed_solver.hpp"
#include "connections/embedding.hpp"
#include "connections/eval.hpp"
#include "connections/llm_solver.hpp"
#include "connections/report.hpp"
#include "connections/stats.hpp"
#include "connections/transport.hpp"

namespace connections {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Largest number of incorrect guesses the iterative embedding solver can
// make: every 4-subset of 16 words except the four answers.
constexpr int kDefaultSweepBudget = 1816;

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

[[noreturn]] void usage_error(const std::string& what) { throw CliError(kExitInvalidInput, what); }

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool json_errors = false;

  void diagnose(int code, std::string_view kind, const std::string& message) const {
    if (json_errors) {
      err << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump() << "\n";
    } else {
      err << "error: " << message << "\n";
    }
  }
};

struct GameFlags {
  std::uint64_t seed = 0;
  std::optional<int> max_incorrect;
  bool official_rules = false;
  std::string variant = "iterative";
  std::string word_order = "shuffled";
};

struct LlmFlags {
  std::string model;
  std::string transport = "replay";
  double temperature = 0.0;
  bool cot = false;
  int max_invalid = kDefaultMaxInvalid;
  std::string word_list_style = "comma";
  std::string initial_role = "user";
  std::string endpoint;
  std::string api_key_env = HttpTransportConfig{}.api_key_env;
  // replay source and capture target: a file for solve-llm, a directory for
  // batch commands
  std::string fixture;
  std::string capture;
};

void add_dataset(CLI::App* sub, std::string& dataset) {
  sub->add_option("--dataset", dataset, "Puzzle file (JSON)")->required();
}

void add_json_errors(CLI::App* sub, bool& flag) {
  sub->add_flag("--json-errors", flag, "Emit diagnostics on stderr as JSON lines");
}

void add_game_flags(CLI::App* sub, GameFlags& g, int default_budget, bool with_variant = true) {
  sub->add_option("--seed", g.seed, "Word-order shuffle seed")->capture_default_str();
  auto* mi = sub->add_option("--max-incorrect", g.max_incorrect,
                             fmt::format("Incorrect guesses allowed (default {})", default_budget));
  auto* official = sub->add_flag("--official-rules", g.official_rules,
                                 fmt::format("Use the game's own budget of {} incorrect guesses", kOfficialMaxIncorrect));
  official->excludes(mi);
  if (with_variant) {
    sub->add_option("--variant", g.variant, "iterative or challenge (all groups at once)")
        ->check(CLI::IsMember({"iterative", "challenge"}))
        ->capture_default_str();
  }
  sub->add_option("--word-order", g.word_order, "Presented word order: shuffled or grouped")
      ->check(CLI::IsMember({"shuffled", "grouped"}))
      ->capture_default_str();
}

void add_llm_flags(CLI::App* sub, LlmFlags& l, bool single_session) {
  sub->add_option("--model", l.model, "Chat model identifier")->required();
  sub->add_option("--transport", l.transport, "replay (recorded fixtures) or http (live endpoint)")
      ->check(CLI::IsMember({"replay", "http"}))
      ->capture_default_str();
  if (single_session) {
    sub->add_option("--fixture", l.fixture, "Session fixture to replay (replay transport)");
    sub->add_option("--capture", l.capture, "Write the live session to this fixture file (http transport)");
  } else {
    sub->add_option("--fixture-dir", l.fixture, "Directory of <id>_seed<seed>.json fixtures (replay transport)");
    sub->add_option("--capture-dir", l.capture, "Write each live session as a fixture here (http transport)");
  }
  sub->add_option("--endpoint", l.endpoint, "Base URL of the chat-completions service (http transport)");
  sub->add_option("--api-key-env", l.api_key_env, "Environment variable holding the API key")->capture_default_str();
  sub->add_option("--temperature", l.temperature, "Sampling temperature")->capture_default_str();
  sub->add_option("--word-list-style", l.word_list_style, "Word list rendering: comma, newline or bracketed")
      ->check(CLI::IsMember({"comma", "newline", "bracketed"}))
      ->capture_default_str();
  sub->add_option("--initial-role", l.initial_role, "Role of the opening prompt: user or system")
      ->check(CLI::IsMember({"user", "system"}))
      ->capture_default_str();
}

void add_llm_game_flags(CLI::App* sub, LlmFlags& l) {
  sub->add_flag("--cot", l.cot, "Add the chain-of-thought instruction");
  sub->add_option("--max-invalid", l.max_invalid, "Invalid guesses before the session is aborted")
      ->capture_default_str();
}

GameConfig make_game(const GameFlags& g, int default_budget) {
  GameConfig c;
  c.variant = *parse_variant(g.variant);
  c.max_incorrect = g.official_rules ? kOfficialMaxIncorrect : g.max_incorrect.value_or(default_budget);
  c.word_order = g.word_order == "grouped" ? WordOrder::grouped() : WordOrder::shuffled(g.seed);
  if (c.max_incorrect < 1) usage_error("--max-incorrect must be >= 1");
  return c;
}

// Checked before any file is touched.
void check_llm_flags(const LlmFlags& l, bool single_session) {
  const char* fixture_flag = single_session ? "--fixture" : "--fixture-dir";
  const char* capture_flag = single_session ? "--capture" : "--capture-dir";
  if (l.transport == "replay") {
    if (l.fixture.empty()) usage_error(fmt::format("--transport replay requires {}", fixture_flag));
    if (!l.endpoint.empty()) usage_error("--endpoint only applies to --transport http");
    if (!l.capture.empty()) usage_error(fmt::format("{} only applies to --transport http", capture_flag));
  } else {
    if (!l.fixture.empty()) usage_error(fmt::format("{} only applies to --transport replay", fixture_flag));
  }
  if (l.max_invalid < 1) usage_error("--max-invalid must be >= 1");
  if (l.api_key_env.empty()) usage_error("--api-key-env must name an environment variable");
}

SolverParams make_params(const LlmFlags& l) {
  SolverParams p;
  p.model_name = l.model;
  p.temperature = l.temperature;
  p.max_invalid = l.max_invalid;
  p.chain_of_thought = l.cot;
  p.word_list_style = *parse_word_list_style(l.word_list_style);
  p.initial_role = *parse_role(l.initial_role);
  return p;
}

HttpTransportConfig make_http(const LlmFlags& l) {
  HttpTransportConfig h;
  if (!l.endpoint.empty()) h.base_url = l.endpoint;
  h.api_key_env = l.api_key_env;
  return h;
}

const Puzzle& require_puzzle(const std::vector<Puzzle>& puzzles, const std::string& id) {
  const Puzzle* p = find_puzzle(puzzles, id);
  if (!p) usage_error("no puzzle with id '" + id + "' in the dataset");
  return *p;
}

int solve_exit(const Transcript& t) {
  switch (t.outcome) {
    case Outcome::Won: return kExitOk;
    case Outcome::Lost:
    case Outcome::AbortedInvalid: return kExitUnsolved;
    default: return kExitRuntime;
  }
}

void emit_transcript(const Streams& s, const Transcript& t, const std::string& out_path) {
  const auto text = to_json(t).dump(2) + "\n";
  if (!out_path.empty()) write_text_file(out_path, text);
  s.out << text;
}

ReportFormat parse_format(const std::string& f) {
  if (f == "json") return ReportFormat::Json;
  if (f == "csv") return ReportFormat::Csv;
  return ReportFormat::Both;
}

std::vector<std::uint64_t> resolve_seeds(const std::vector<std::uint64_t>& list, std::optional<int> count,
                                         std::uint64_t single) {
  if (!list.empty()) return list;
  if (count) {
    if (*count < 1) usage_error("--seed-count must be >= 1");
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < *count; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
    return seeds;
  }
  return {single};
}

void print_summary(const Streams& s, const AggregateReport& r) {
  s.out << fmt::format("transcripts {}\n", r.transcripts);
  s.out << fmt::format("success {}/{} ({:.4f})\n", r.overall.successes, r.overall.total, r.overall.value());
  for (Color c : kAllColors) {
    const auto& rate = r.per_color[index_of(c)];
    s.out << fmt::format("{} {}/{} ({:.4f})\n", to_string(c), rate.successes, rate.total, rate.value());
  }
}

std::vector<Transcript> load_transcript_input(const fs::path& p) {
  return load_transcripts(fs::is_directory(p) ? p / "transcripts.json" : p);
}

// Sorted by (puzzle id, seed) so paired samples line up.
void sort_transcripts(std::vector<Transcript>& ts) {
  std::sort(ts.begin(), ts.end(), [](const Transcript& a, const Transcript& b) {
    return std::tie(a.puzzle_id, a.seed) < std::tie(b.puzzle_id, b.seed);
  });
}

std::vector<double> metric_samples(const std::vector<Transcript>& ts, const std::string& metric, bool per_puzzle) {
  if (metric == "success") return success_samples(ts, per_puzzle);
  return color_samples(ts, *parse_color(metric), per_puzzle);
}

json ttest_json(const TTestResult& r, std::size_t na, std::size_t nb) {
  return {{"test", to_string(r.kind)}, {"t", r.t}, {"df", r.df}, {"p", r.p}, {"n_a", na}, {"n_b", nb}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Streams s{out, err};
  for (int i = 1; i < argc; ++i) {
    if (std::string_view(argv[i]) == "--json-errors") s.json_errors = true;
  }

  CLI::App app{"Connections puzzle toolkit: validate datasets, run embedding and chat-model solvers, "
               "evaluate, sweep guess budgets and compare runs.",
               "connections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);
  bool json_errors = false;
  add_json_errors(&app, json_errors);

  std::string dataset, out_path, puzzle_id, embeddings, format = "both";
  GameFlags game;
  LlmFlags llm;
  std::vector<std::uint64_t> seeds;
  std::optional<int> seed_count;
  unsigned threads = 1;
  int max_concurrent = 4, min_interval_ms = 0;

  auto* validate = app.add_subcommand("validate", "Check a puzzle file and print dataset statistics");
  add_dataset(validate, dataset);
  validate->add_option("--out", out_path, "Also write the validation report (JSON) here");
  add_json_errors(validate, json_errors);

  auto* solve_embed = app.add_subcommand("solve-embed", "Solve one puzzle with the embedding solver");
  add_dataset(solve_embed, dataset);
  solve_embed->add_option("--puzzle-id", puzzle_id, "Puzzle to solve")->required();
  solve_embed->add_option("--embeddings", embeddings, "Embedding table (JSON)")->required();
  solve_embed->add_option("--out", out_path, "Also write the transcript (JSON) here");
  add_game_flags(solve_embed, game, kExperimentMaxIncorrect);
  add_json_errors(solve_embed, json_errors);

  auto* solve_llm = app.add_subcommand("solve-llm", "Play one puzzle against a chat model");
  add_dataset(solve_llm, dataset);
  solve_llm->add_option("--puzzle-id", puzzle_id, "Puzzle to play")->required();
  solve_llm->add_option("--out", out_path, "Also write the transcript (JSON) here");
  add_llm_flags(solve_llm, llm, true);
  add_llm_game_flags(solve_llm, llm);
  add_game_flags(solve_llm, game, kExperimentMaxIncorrect);
  add_json_errors(solve_llm, json_errors);

  auto add_batch_flags = [&](CLI::App* sub) {
    auto* list = sub->add_option("--seeds", seeds, "Explicit seed list (comma separated)")->delimiter(',');
    auto* count = sub->add_option("--seed-count", seed_count, "Use seeds 0..N-1");
    list->excludes(count);
    sub->add_option("--threads", threads, "Episodes played in parallel")->capture_default_str();
    sub->add_option("--format", format, "Report format: json, csv or both")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->capture_default_str();
  };

  std::string solver_kind = "embed";
  auto* eval = app.add_subcommand("eval", "Run a solver over the dataset and write a report");
  add_dataset(eval, dataset);
  eval->add_option("--out", out_path, "Report directory")->required();
  eval->add_option("--solver", solver_kind, "embed or llm")->check(CLI::IsMember({"embed", "llm"}))->capture_default_str();
  eval->add_option("--embeddings", embeddings, "Embedding table (embed solver)");
  eval->add_option("--model", llm.model, "Chat model identifier (llm solver)");
  eval->add_option("--transport", llm.transport, "replay or http (llm solver)")
      ->check(CLI::IsMember({"replay", "http"}))
      ->capture_default_str();
  eval->add_option("--fixture-dir", llm.fixture, "Directory of <id>_seed<seed>.json fixtures (replay transport)");
  eval->add_option("--capture-dir", llm.capture, "Write each live session as a fixture here (http transport)");
  eval->add_option("--endpoint", llm.endpoint, "Base URL of the chat-completions service (http transport)");
  eval->add_option("--api-key-env", llm.api_key_env, "Environment variable holding the API key")->capture_default_str();
  eval->add_option("--temperature", llm.temperature, "Sampling temperature")->capture_default_str();
  eval->add_option("--word-list-style", llm.word_list_style, "Word list rendering: comma, newline or bracketed")
      ->check(CLI::IsMember({"comma", "newline", "bracketed"}))
      ->capture_default_str();
  eval->add_option("--initial-role", llm.initial_role, "Role of the opening prompt: user or system")
      ->check(CLI::IsMember({"user", "system"}))
      ->capture_default_str();
  eval->add_option("--max-concurrent", max_concurrent, "Concurrent HTTP requests")->capture_default_str();
  eval->add_option("--min-interval-ms", min_interval_ms, "Minimum spacing between HTTP request starts")
      ->capture_default_str();
  add_llm_game_flags(eval, llm);
  add_batch_flags(eval);
  add_game_flags(eval, game, kExperimentMaxIncorrect);
  add_json_errors(eval, json_errors);

  auto* sweep = app.add_subcommand("sweep", "Solve rate as a function of allowed incorrect guesses (embedding solver)");
  add_dataset(sweep, dataset);
  sweep->add_option("--out", out_path, "Report directory")->required();
  sweep->add_option("--embeddings", embeddings, "Embedding table (JSON)")->required();
  add_batch_flags(sweep);
  add_game_flags(sweep, game, kDefaultSweepBudget);
  add_json_errors(sweep, json_errors);

  std::string a_path, b_path, test = "welch", samples = "pooled", metric = "all";
  auto* stats = app.add_subcommand("stats", "t-test between two evaluation runs");
  stats->add_option("--a", a_path, "First run: transcripts.json or its report directory")->required();
  stats->add_option("--b", b_path, "Second run: transcripts.json or its report directory")->required();
  stats->add_option("--test", test, "welch or paired")->check(CLI::IsMember({"welch", "paired"}))->capture_default_str();
  stats->add_option("--samples", samples, "pooled (one sample per transcript) or per-puzzle (mean over seeds)")
      ->check(CLI::IsMember({"pooled", "per-puzzle"}))
      ->capture_default_str();
  stats->add_option("--metric", metric, "success, yellow, green, blue, purple or all")
      ->check(CLI::IsMember({"success", "yellow", "green", "blue", "purple", "all"}))
      ->capture_default_str();
  stats->add_option("--out", out_path, "Also write the results (JSON) here");
  add_json_errors(stats, json_errors);

  auto* replicate = app.add_subcommand("replicate-ordering",
                                       "One-shot all-groups prompt per puzzle, to measure the effect of word order");
  add_dataset(replicate, dataset);
  replicate->add_option("--out", out_path, "Report directory")->required();
  add_llm_flags(replicate, llm, false);
  add_batch_flags(replicate);
  replicate->add_option("--seed", game.seed, "Word-order shuffle seed")->capture_default_str();
  replicate->add_option("--word-order", game.word_order, "Presented word order: shuffled or grouped")
      ->check(CLI::IsMember({"shuffled", "grouped"}))
      ->capture_default_str();
  add_json_errors(replicate, json_errors);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    s.diagnose(kExitInvalidInput, "usage", e.what());
    return kExitInvalidInput;
  }
  s.json_errors = s.json_errors || json_errors;

  try {
    if (validate->parsed()) {
      auto report = validate_dataset(dataset);
      if (!out_path.empty()) write_text_file(out_path, report.to_json().dump(2) + "\n");
      for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      if (!report.ok()) {
        for (const auto& issue : report.errors) {
          std::string where = issue.record >= 0 ? fmt::format("record {}", issue.record) : "file";
          if (!issue.puzzle_id.empty()) where += fmt::format(" ({})", issue.puzzle_id);
          s.diagnose(kExitInvalidInput, issue.rule, where + ": " + issue.message);
        }
        return kExitInvalidInput;
      }
      out << fmt::format("puzzles {}\ndistinct_words {}\nwords_shared_across_puzzles {}\n", report.stats->puzzle_count,
                         report.stats->distinct_words, report.stats->words_shared_across_puzzles);
      return kExitOk;
    }

    if (solve_embed->parsed()) {
      auto config = make_game(game, kExperimentMaxIncorrect);
      auto puzzles = load_dataset(dataset);
      const auto& puzzle = require_puzzle(puzzles, puzzle_id);
      auto table = EmbeddingTable::load(embeddings);
      auto t = config.variant == Variant::Iterative ? solve_iterative(puzzle, table, config)
                                                    : solve_challenge(puzzle, table, config);
      emit_transcript(s, t, out_path);
      return solve_exit(t);
    }

    if (solve_llm->parsed()) {
      check_llm_flags(llm, true);
      auto config = make_game(game, kExperimentMaxIncorrect);
      auto params = make_params(llm);
      params.sampling_seed = static_cast<std::int64_t>(game.seed);
      auto puzzles = load_dataset(dataset);
      const auto& puzzle = require_puzzle(puzzles, puzzle_id);
      Transcript t;
      if (llm.transport == "replay") {
        ReplayTransport replay(SessionFixture::load(llm.fixture));
        t = play(puzzle, config, params, replay);
      } else {
        HttpChatTransport http(make_http(llm));
        if (llm.capture.empty()) {
          t = play(puzzle, config, params, http);
        } else {
          CapturingTransport capture(http);
          t = play(puzzle, config, params, capture);
          capture.fixture().save(llm.capture);
        }
      }
      emit_transcript(s, t, out_path);
      if (t.outcome == Outcome::TransportFailure || t.outcome == Outcome::Error) {
        s.diagnose(kExitRuntime, "transport", t.error);
      }
      return solve_exit(t);
    }

    if (eval->parsed() || sweep->parsed()) {
      const bool is_sweep = sweep->parsed();
      RunConfig rc;
      rc.dataset_path = dataset;
      rc.seeds = resolve_seeds(seeds, seed_count, game.seed);
      rc.threads = threads;
      rc.game = make_game(game, is_sweep ? kDefaultSweepBudget : kExperimentMaxIncorrect);
      if (is_sweep) rc.sweep_budget = rc.game.max_incorrect;
      if (is_sweep || solver_kind == "embed") {
        if (embeddings.empty()) usage_error("the embedding solver needs --embeddings");
        if (!llm.model.empty()) usage_error("--model only applies to --solver llm");
        rc.solver = EmbedSolverSpec{embeddings};
      } else {
        if (!embeddings.empty()) usage_error("--embeddings only applies to --solver embed");
        if (llm.model.empty()) usage_error("--solver llm needs --model");
        check_llm_flags(llm, false);
        if (max_concurrent < 1) usage_error("--max-concurrent must be >= 1");
        if (min_interval_ms < 0) usage_error("--min-interval-ms must be >= 0");
        LlmSolverSpec spec;
        spec.params = make_params(llm);
        spec.transport = llm.transport == "replay" ? TransportKind::Replay : TransportKind::Http;
        spec.fixture_dir = llm.fixture;
        spec.http = make_http(llm);
        spec.max_concurrent = max_concurrent;
        spec.min_request_interval = std::chrono::milliseconds(min_interval_ms);
        if (!llm.capture.empty()) spec.capture_dir = fs::path(llm.capture);
        rc.solver = spec;
      }
      try {
        rc.validate();
      } catch (const std::exception& e) {
        usage_error(e.what());
      }

      auto transcripts = run_eval(rc);
      auto report = aggregate(transcripts);
      std::optional<SweepCurve> curve;
      if (is_sweep) curve = sweep_allowance(transcripts, *rc.sweep_budget);
      write_report(out_path, report, transcripts, parse_format(format), curve, make_manifest(rc.to_json()));
      print_summary(s, report);
      if (curve) {
        auto half = curve->first_reaching(0.5);
        auto all = curve->first_reaching(1.0);
        out << "half_solved_at " << (half ? std::to_string(*half) : "never") << "\n";
        out << "all_solved_at " << (all ? std::to_string(*all) : "never") << "\n";
      }
      if (report.outcomes["error"] > 0 || report.outcomes["transport_failure"] > 0) {
        s.diagnose(kExitRuntime, "episodes",
                   fmt::format("{} episode(s) failed; see transcripts.json",
                               report.outcomes["error"] + report.outcomes["transport_failure"]));
        return kExitRuntime;
      }
      return kExitOk;
    }

    if (stats->parsed()) {
      auto a = load_transcript_input(a_path);
      auto b = load_transcript_input(b_path);
      sort_transcripts(a);
      sort_transcripts(b);
      const bool per_puzzle = samples == "per-puzzle";
      if (test == "paired") {
        auto keys = [&](const std::vector<Transcript>& ts) {
          std::vector<std::pair<std::string, std::uint64_t>> k;
          for (const auto& t : ts) k.emplace_back(t.puzzle_id, per_puzzle ? 0 : t.seed);
          k.erase(std::unique(k.begin(), k.end()), k.end());
          return k;
        };
        if (keys(a) != keys(b)) usage_error("paired test needs both runs to cover the same puzzles and seeds");
      }
      std::vector<std::string> metrics;
      if (metric == "all") metrics = {"success", "yellow", "green", "blue", "purple"};
      else metrics = {metric};
      json results = json::object();
      for (const auto& m : metrics) {
        auto xa = metric_samples(a, m, per_puzzle);
        auto xb = metric_samples(b, m, per_puzzle);
        try {
          auto r = test == "paired" ? paired_t(xa, xb) : welch_t(xa, xb);
          results[m] = ttest_json(r, xa.size(), xb.size());
        } catch (const StatsError& e) {
          results[m] = {{"test", test}, {"error", e.what()}, {"n_a", xa.size()}, {"n_b", xb.size()}};
        }
      }
      json doc{{"samples", samples}, {"results", results}};
      if (!out_path.empty()) write_text_file(out_path, doc.dump(2) + "\n");
      out << doc.dump(2) << "\n";
      if (metrics.size() == 1 && results[metric].contains("error")) {
        s.diagnose(kExitInvalidInput, "stats", results[metric]["error"].get<std::string>());
        return kExitInvalidInput;
      }
      return kExitOk;
    }

    if (replicate->parsed()) {
      check_llm_flags(llm, false);
      const auto run_seeds = resolve_seeds(seeds, seed_count, game.seed);
      const auto params = make_params(llm);
      params.validate();
      auto puzzles = load_dataset(dataset);
      GameConfig base;
      base.variant = Variant::AllInOne;
      base.max_incorrect = 1;
      base.word_order = game.word_order == "grouped" ? WordOrder::grouped() : WordOrder::shuffled(game.seed);
      auto limiter = std::make_shared<RequestLimiter>(4, std::chrono::milliseconds(0));
      EpisodeFn fn = [&](const Puzzle& p, const GameConfig& c) {
        auto sp = params;
        sp.sampling_seed = static_cast<std::int64_t>(c.word_order.seed);
        if (llm.transport == "replay") {
          ReplayTransport replay(SessionFixture::load(session_fixture_path(llm.fixture, p.id(), c.word_order.seed)));
          return play_replication(p, replay, c.word_order, sp);
        }
        HttpChatTransport http(make_http(llm), limiter);
        if (llm.capture.empty()) return play_replication(p, http, c.word_order, sp);
        CapturingTransport capture(http);
        auto t = play_replication(p, capture, c.word_order, sp);
        capture.fixture().save(session_fixture_path(llm.capture, p.id(), c.word_order.seed));
        return t;
      };
      auto transcripts = run_batch(puzzles, run_seeds, base, fn, {false, threads});
      auto report = aggregate(transcripts);
      json run{{"dataset", dataset},
               {"mode", "replicate-ordering"},
               {"model", llm.model},
               {"word_order", game.word_order},
               {"seeds", run_seeds},
               {"transport", llm.transport}};
      write_report(out_path, report, transcripts, parse_format(format), std::nullopt, make_manifest(run));
      print_summary(s, report);
      if (report.outcomes["error"] > 0 || report.outcomes["transport_failure"] > 0) {
        s.diagnose(kExitRuntime, "episodes", "some episodes failed; see transcripts.json");
        return kExitRuntime;
      }
      return kExitOk;
    }
  } catch (const CliError& e) {
    s.diagnose(e.code(), e.code() == kExitInvalidInput ? "invalid_input" : "runtime", e.what());
    return e.code();
  } catch (const DatasetIoError& e) {
    s.diagnose(kExitRuntime, "io", e.what());
    return kExitRuntime;
  } catch (const DatasetError& e) {
    s.diagnose(kExitInvalidInput, "dataset", e.what());
    return kExitInvalidInput;
  } catch (const EmbeddingError& e) {
    s.diagnose(kExitInvalidInput, "embeddings", e.what());
    return kExitInvalidInput;
  } catch (const json::exception& e) {
    s.diagnose(kExitInvalidInput, "json", e.what());
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    s.diagnose(kExitInvalidInput, "invalid_input", e.what());
    return kExitInvalidInput;
  } catch (const std::logic_error& e) {
    s.diagnose(kExitInvalidInput, "invalid_input", e.what());
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    s.diagnose(kExitRuntime, "runtime", e.what());
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace connections
