#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "connections/game.hpp"
#include "connections/prompts.hpp"
#include "connections/transcript.hpp"
#include "connections/transport.hpp"

namespace connections {

inline constexpr int kDefaultMaxInvalid = 5;

struct SolverParams {
  std::string model_name;
  double temperature = 0.0;
  std::int64_t sampling_seed = 0;
  int max_invalid = kDefaultMaxInvalid;
  bool chain_of_thought = false;
  WordListStyle word_list_style = WordListStyle::CommaSeparated;
  // Role of the opening instructions. Later prompts are always user turns.
  Role initial_role = Role::User;
  const PromptTemplates* templates = &PromptTemplates::standard();

  void validate() const;
  std::string solver_name() const;
};

// Plays one puzzle against a chat model. Parse failures and guesses the game
// rejects both go down the invalid-guess path; the session aborts once
// max_invalid of them accumulate. Transport failures that survive `retry`
// end the session as TransportFailure. Never throws for model behavior.
Transcript play(const Puzzle& puzzle, const GameConfig& config, const SolverParams& params,
                ChatTransport& transport, const RetryPolicy& retry = {});

// One all-in-one exchange with the replication prompt. One guess, one chance
// to format it.
Transcript play_replication(const Puzzle& puzzle, ChatTransport& transport, WordOrder order,
                            const SolverParams& params, const RetryPolicy& retry = {});

}  // namespace connections
