#include "connections/llm_solver.hpp"

#include <set>

#include "connections/reply_parser.hpp"

namespace connections {
namespace {

std::set<Word> to_set(const std::vector<Word>& words) { return {words.begin(), words.end()}; }

std::set<Word> solved_words(const GameState& state) {
  std::set<Word> out;
  for (const auto& cat : state.solved()) out.insert(cat.words.begin(), cat.words.end());
  return out;
}

std::string describe(const ParseError& e) {
  return std::string(to_string(e.kind)) + (e.detail.empty() ? "" : ": " + e.detail);
}

struct Session {
  const SolverParams& params;
  ChatTransport& transport;
  const RetryPolicy& retry;
  GameState state;
  Transcript t;

  Session(const Puzzle& puzzle, const GameConfig& config, const SolverParams& p, ChatTransport& tr,
          const RetryPolicy& r)
      : params(p), transport(tr), retry(r), state(GameState::new_game(puzzle, config)) {
    t.puzzle_id = puzzle.id();
    t.solver = params.solver_name();
    t.seed = config.word_order.seed;
    t.config = config;
    t.max_invalid = params.max_invalid;
  }

  PromptOptions prompt_options() const {
    return {params.chain_of_thought, params.word_list_style, params.templates};
  }

  // Returns the reply's index in the conversation, or nullopt after a
  // transport failure (outcome already set).
  std::optional<std::size_t> exchange(const std::string& prompt, Role role) {
    t.conversation.push_back({role, prompt});
    ChatRequestParams req{params.model_name, params.temperature, params.sampling_seed};
    try {
      auto reply = send_with_retry(transport, t.conversation, req, retry);
      t.conversation.push_back({Role::Assistant, std::move(reply)});
      return t.conversation.size() - 1;
    } catch (const TransportError& e) {
      t.outcome = Outcome::TransportFailure;
      t.error = e.what();
      return std::nullopt;
    }
  }

  // Parses and submits one reply. Returns the feedback that selects the next
  // prompt (Invalid for parse failures).
  Feedback handle_reply(std::size_t reply_index) {
    const auto& reply = t.conversation[reply_index].content;
    auto before = state;
    if (state.config().variant == Variant::Iterative) {
      auto parsed = parse_single_guess(reply, to_set(state.remaining()), solved_words(state));
      if (auto* err = std::get_if<ParseError>(&parsed)) return parse_failure(*err, reply_index);
      state.submit_guess(std::get<Guess>(parsed));
    } else {
      auto parsed = parse_partition_guess(reply, to_set(state.remaining()));
      if (auto* err = std::get_if<ParseError>(&parsed)) return parse_failure(*err, reply_index);
      state.submit_partition(std::get<PartitionGuess>(parsed));
    }
    record_submission(t, before, state.history().back(), reply_index);
    return state.history().back().feedback;
  }

  Feedback parse_failure(const ParseError& err, std::size_t reply_index) {
    TranscriptEvent e;
    e.kind = TranscriptEvent::Kind::ParseFailure;
    e.parse_error = describe(err);
    e.incorrect_before = state.incorrect_count();
    e.reply_index = reply_index;
    t.events.push_back(std::move(e));
    ++t.invalid_count;
    return Feedback::invalid(err.kind == ParseErrorKind::WordAlreadySolved
                                 ? InvalidReason::WordAlreadySolved
                                 : InvalidReason::NotFourWords);
  }

  Transcript run(PromptKind first) {
    auto prompt = render_prompt(first, state, prompt_options());
    Role role = params.initial_role;
    while (true) {
      auto reply_index = exchange(prompt, role);
      if (!reply_index) break;
      role = Role::User;
      auto fb = handle_reply(*reply_index);
      if (state.finished()) {
        finish_from_state(t, state);
        break;
      }
      if (t.invalid_count >= params.max_invalid) {
        t.outcome = Outcome::AbortedInvalid;
        break;
      }
      prompt = render_prompt(next_prompt_kind(state.config().variant, fb), state, prompt_options());
    }
    return std::move(t);
  }
};

}  // namespace

void SolverParams::validate() const {
  if (max_invalid < 1) throw std::invalid_argument("max_invalid must be >= 1");
  if (model_name.empty()) throw std::invalid_argument("model_name is required");
  if (!templates) throw std::invalid_argument("prompt templates are required");
}

std::string SolverParams::solver_name() const {
  return "llm:" + model_name + (chain_of_thought ? ":cot" : "");
}

Transcript play(const Puzzle& puzzle, const GameConfig& config, const SolverParams& params,
                ChatTransport& transport, const RetryPolicy& retry) {
  params.validate();
  Session s(puzzle, config, params, transport, retry);
  return s.run(config.variant == Variant::Iterative ? PromptKind::Initial : PromptKind::InitialAllInOne);
}

Transcript play_replication(const Puzzle& puzzle, ChatTransport& transport, WordOrder order,
                            const SolverParams& params, const RetryPolicy& retry) {
  auto single = params;
  single.max_invalid = 1;
  single.chain_of_thought = false;
  single.validate();
  GameConfig config{Variant::AllInOne, 1, order};
  Session s(puzzle, config, single, transport, retry);
  s.t.solver = "replication:" + params.model_name;
  return s.run(PromptKind::Replication);
}

}  // namespace connections
