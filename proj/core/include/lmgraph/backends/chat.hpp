#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lmgraph/errors.hpp"
#include "lmgraph/types.hpp"

namespace lmgraph::backends {

enum class Role { system, user, assistant };

std::string to_string(Role role);

struct ChatMessage {
    Role role = Role::user;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

struct GenerationParams {
    double temperature = 0.7;
    int max_output_tokens = 512;
    std::uint64_t seed = 0; // passed through when the backend supports it

    void validate() const;
};

// One turn of chat generation. `history` excludes the system message and must
// end with a user message; implementations prepend the system prompt on the
// wire where a protocol calls for it.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual std::string generate(const std::string& system_prompt,
                                 const std::vector<ChatMessage>& history,
                                 const GenerationParams& params) = 0;
};

using EmbeddingVector = std::vector<double>;

// Maps text to a unit-norm vector; deterministic per (embedder, text).
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual EmbeddingVector embed(const std::string& text) = 0;
    // 0 when the dimension is only known from responses (HTTP embedder).
    virtual int dimension() const = 0;
};

double l2_norm(const EmbeddingVector& v);
void normalize_in_place(EmbeddingVector& v);

// Hands out chat backends per conversation. Scripted backends keep a replay
// cursor, so every conversation needs a fresh instance.
class BackendProvider {
public:
    virtual ~BackendProvider() = default;
    virtual std::unique_ptr<ChatBackend> make_chat(const ModelRef& model) const = 0;
};

// Builds backends from registry descriptors. Scripted fixture files are read
// once at construction time.
class StandardBackendProvider : public BackendProvider {
public:
    explicit StandardBackendProvider(const ModelRegistry& registry);

    std::unique_ptr<ChatBackend> make_chat(const ModelRef& model) const override;

private:
    std::map<std::string, std::vector<std::string>> preloaded_scripts_;
};

void require_chat_history(const std::vector<ChatMessage>& history);

} // namespace lmgraph::backends
