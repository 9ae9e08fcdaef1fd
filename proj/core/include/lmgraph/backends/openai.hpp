#pragma once

#include "lmgraph/backends/chat.hpp"

namespace lmgraph::backends {

struct HttpRetryPolicy {
    int max_attempts = 4; // 1 initial + 3 retries
    int backoff_initial_ms = 250;

    static HttpRetryPolicy none() { return {1, 0}; }
};

// Chat client for the OpenAI-compatible protocol:
// POST {base}/v1/chat/completions, answer taken from choices[0].message.content.
class OpenAiChatBackend : public ChatBackend {
public:
    OpenAiChatBackend(std::string base_url, std::string model, std::string api_key_env = {},
                      HttpRetryPolicy retry = {});

    std::string generate(const std::string& system_prompt,
                         const std::vector<ChatMessage>& history,
                         const GenerationParams& params) override;

private:
    std::string base_url_;
    std::string model_;
    std::string api_key_env_;
    HttpRetryPolicy retry_;
};

// Embedding client: POST {base}/v1/embeddings, vector taken from
// data[0].embedding, then L2-normalized. An optional instruction prefix is
// prepended to every text before embedding.
class OpenAiEmbedder : public Embedder {
public:
    OpenAiEmbedder(std::string base_url, std::string model, std::string instruction_prefix = {},
                   std::string api_key_env = {}, HttpRetryPolicy retry = {});

    EmbeddingVector embed(const std::string& text) override;
    int dimension() const override { return 0; } // known only from responses

private:
    std::string base_url_;
    std::string model_;
    std::string instruction_prefix_;
    std::string api_key_env_;
    HttpRetryPolicy retry_;
};

} // namespace lmgraph::backends
