#include "lmgraph/dialogue/runner.hpp"

#include <cstdio>

#include "lmgraph/parallel.hpp"

namespace lmgraph::dialogue {

using backends::ChatMessage;
using backends::GenerationParams;
using backends::Role;

namespace {

// History as seen by `speaker`: own prior utterances map to assistant, the
// partner's to user. The primer is attributed to the first speaker.
std::vector<ChatMessage> history_for(const std::vector<Utterance>& utterances,
                                     const std::string& speaker) {
    std::vector<ChatMessage> history;
    history.reserve(utterances.size());
    for (const auto& u : utterances)
        history.push_back({u.speaker == speaker ? Role::assistant : Role::user, u.text});
    return history;
}

} // namespace

Conversation run_conversation(const PairKey& pair, int run, const ModelRef& model_i,
                              const ModelRef& model_j, const ConversationConfig& config,
                              const backends::BackendProvider& provider, const Seeder& seeder) {
    config.validate();
    if (model_i.id == model_j.id)
        throw ConfigError("conversation requires two distinct models, got '" + model_i.id + "'");

    bool j_first = seeded_coin(seeder.derive("first_speaker", pair, run));
    const ModelRef& first = j_first ? model_j : model_i;
    const ModelRef& second = j_first ? model_i : model_j;

    Conversation conversation;
    conversation.pair = pair;
    conversation.run = run;
    conversation.first_speaker = first.id;
    conversation.utterances.push_back({1, first.id, config.start_prompt});
    conversation.termination = Termination::max_turns;

    auto first_chat = provider.make_chat(first);
    auto second_chat = provider.make_chat(second);

    int max_utterances = 2 * config.max_turns;
    while (static_cast<int>(conversation.utterances.size()) < max_utterances) {
        int index = static_cast<int>(conversation.utterances.size()) + 1;
        bool seconds_turn = (index % 2) == 0;
        const ModelRef& speaker = seconds_turn ? second : first;
        backends::ChatBackend& chat = seconds_turn ? *second_chat : *first_chat;

        GenerationParams params;
        params.temperature = config.sampling.temperature;
        params.max_output_tokens = config.sampling.max_output_tokens;
        params.seed = seeder.derive("chat_utterance:" + std::to_string(index), pair, run);

        std::string text;
        try {
            text = chat.generate(config.system_prompt,
                                 history_for(conversation.utterances, speaker.id), params);
        } catch (const BackendError& e) {
            std::fprintf(stderr, "warning: pair (%d,%d) run %d: backend '%s' failed: %s\n",
                         pair.i, pair.j, run, speaker.id.c_str(), e.what());
            conversation.termination = Termination::backend_error;
            return conversation;
        }

        conversation.utterances.push_back({index, speaker.id, std::move(text)});
        if (conversation.utterances.back().text.find(config.stop_token) != std::string::npos) {
            conversation.termination = Termination::stop_token;
            return conversation;
        }
    }
    return conversation;
}

std::vector<std::pair<Utterance, Utterance>> complete_turns(const Conversation& conversation) {
    std::vector<std::pair<Utterance, Utterance>> turns;
    const auto& u = conversation.utterances;
    for (std::size_t k = 0; k + 1 < u.size(); k += 2) turns.emplace_back(u[k], u[k + 1]);
    return turns;
}

std::vector<Conversation> run_all_pairs(const ModelRegistry& registry,
                                        const ConversationConfig& config,
                                        const backends::BackendProvider& provider,
                                        const Seeder& seeder, int concurrency_limit) {
    config.validate();
    std::vector<PairKey> pairs = enumerate_pairs(registry);
    int runs = config.runs_per_pair;

    std::vector<Conversation> out(pairs.size() * static_cast<std::size_t>(runs));
    parallel_for(out.size(), concurrency_limit, [&](std::size_t task) {
        const PairKey& pair = pairs[task / static_cast<std::size_t>(runs)];
        int run = static_cast<int>(task % static_cast<std::size_t>(runs));
        out[task] = run_conversation(pair, run, registry.at(pair.i), registry.at(pair.j), config,
                                     provider, seeder);
    });
    return out;
}

} // namespace lmgraph::dialogue
