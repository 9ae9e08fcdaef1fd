#pragma once

#include <utility>

#include "lmgraph/backends/chat.hpp"
#include "lmgraph/seeding.hpp"
#include "lmgraph/types.hpp"

namespace lmgraph::dialogue {

// One pairwise conversation under the turn-based protocol: a seeded coin
// picks the first speaker, the start prompt stands in as its first utterance
// without a backend call, then the two models alternate until an utterance
// contains the stop token or max_turns complete turns exist. Backend failure
// after retries yields the partial transcript with BACKEND_ERROR.
Conversation run_conversation(const PairKey& pair, int run, const ModelRef& model_i,
                              const ModelRef& model_j, const ConversationConfig& config,
                              const backends::BackendProvider& provider, const Seeder& seeder);

// Pairs (u_{2k-1}, u_{2k}) for k = 1..floor(L/2); a trailing unpaired
// utterance is dropped.
std::vector<std::pair<Utterance, Utterance>> complete_turns(const Conversation& conversation);

// runs_per_pair conversations for every unique pair, executed under a bounded
// concurrency limit, output sorted by (pair, run) regardless of scheduling.
std::vector<Conversation> run_all_pairs(const ModelRegistry& registry,
                                        const ConversationConfig& config,
                                        const backends::BackendProvider& provider,
                                        const Seeder& seeder, int concurrency_limit);

} // namespace lmgraph::dialogue
