#include "lmgraph/backends/chat.hpp"

#include <cmath>

#include "lmgraph/backends/openai.hpp"
#include "lmgraph/backends/scripted.hpp"
#include "lmgraph/backends/synthetic.hpp"

namespace lmgraph::backends {

std::string to_string(Role role) {
    switch (role) {
        case Role::system: return "system";
        case Role::user: return "user";
        case Role::assistant: return "assistant";
    }
    throw DomainError("unknown chat role");
}

void GenerationParams::validate() const {
    if (temperature < 0.0) throw ConfigError("temperature must be >= 0");
    if (max_output_tokens < 1) throw ConfigError("max_output_tokens must be >= 1");
}

double l2_norm(const EmbeddingVector& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

void normalize_in_place(EmbeddingVector& v) {
    double norm = l2_norm(v);
    if (norm == 0.0) throw DomainError("cannot normalize a zero vector");
    for (double& x : v) x /= norm;
}

void require_chat_history(const std::vector<ChatMessage>& history) {
    if (history.empty()) throw DomainError("chat history must be non-empty");
    if (history.back().role != Role::user)
        throw DomainError("chat history must end with a user message");
}

StandardBackendProvider::StandardBackendProvider(const ModelRegistry& registry) {
    for (const auto& model : registry.models()) {
        if (model.backend.kind == BackendKind::scripted && !model.backend.file.empty())
            preloaded_scripts_[model.id] = load_script_lines(model.backend.file);
    }
}

std::unique_ptr<ChatBackend> StandardBackendProvider::make_chat(const ModelRef& model) const {
    const BackendDescriptor& d = model.backend;
    switch (d.kind) {
        case BackendKind::openai:
            return std::make_unique<OpenAiChatBackend>(d.base_url, d.model, d.api_key_env);
        case BackendKind::scripted: {
            auto preloaded = preloaded_scripts_.find(model.id);
            const auto& lines =
                preloaded != preloaded_scripts_.end() ? preloaded->second : d.lines;
            return std::make_unique<ScriptedChatBackend>(lines, d.cycle, model.id);
        }
        case BackendKind::synthetic: {
            SyntheticSpecialistSpec spec;
            spec.topic_vector = d.topic;
            spec.inertia = d.inertia;
            spec.noise_scale = d.noise;
            return std::make_unique<SyntheticChatBackend>(std::move(spec));
        }
    }
    throw ConfigError("model '" + model.id + "' has an unknown backend kind");
}

} // namespace lmgraph::backends
