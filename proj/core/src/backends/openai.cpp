#include "lmgraph/backends/openai.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

#include "httplib.h"

namespace lmgraph::backends {

namespace {

using nlohmann::json;

std::string body_excerpt(const std::string& body) {
    return body.size() <= 200 ? body : body.substr(0, 200) + "...";
}

bool transient_status(int status) {
    return status == 408 || status == 429 || status >= 500;
}

// POSTs JSON with retry/backoff on transport failures and transient statuses.
json post_json(const std::string& base_url, const std::string& path, const json& payload,
               const std::string& api_key_env, const HttpRetryPolicy& retry) {
    std::string bearer;
    if (!api_key_env.empty()) {
        if (const char* key = std::getenv(api_key_env.c_str())) bearer = key;
    }

    std::string last_error;
    int backoff_ms = retry.backoff_initial_ms;
    for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
        if (attempt > 1 && backoff_ms > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }

        httplib::Client client(base_url);
        client.set_connection_timeout(10);
        client.set_read_timeout(120);
        httplib::Headers headers;
        if (!bearer.empty()) headers.emplace("Authorization", "Bearer " + bearer);

        auto result = client.Post(path, headers, payload.dump(), "application/json");
        if (!result) {
            last_error = "transport error: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status == 200) {
            try {
                return json::parse(result->body);
            } catch (const json::exception& e) {
                throw BackendError("malformed JSON from " + base_url + path + ": " + e.what(),
                                   result->status, body_excerpt(result->body));
            }
        }
        if (!transient_status(result->status))
            throw BackendError("HTTP " + std::to_string(result->status) + " from " + base_url +
                                   path,
                               result->status, body_excerpt(result->body));
        last_error = "HTTP " + std::to_string(result->status) + ": " + body_excerpt(result->body);
    }
    throw BackendError("request to " + base_url + path + " failed after " +
                       std::to_string(retry.max_attempts) + " attempts: " + last_error);
}

} // namespace

OpenAiChatBackend::OpenAiChatBackend(std::string base_url, std::string model,
                                     std::string api_key_env, HttpRetryPolicy retry)
    : base_url_(std::move(base_url)),
      model_(std::move(model)),
      api_key_env_(std::move(api_key_env)),
      retry_(retry) {}

std::string OpenAiChatBackend::generate(const std::string& system_prompt,
                                        const std::vector<ChatMessage>& history,
                                        const GenerationParams& params) {
    require_chat_history(history);
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", system_prompt}});
    for (const auto& message : history)
        messages.push_back({{"role", to_string(message.role)}, {"content", message.content}});

    json payload{{"model", model_},
                 {"messages", std::move(messages)},
                 {"temperature", params.temperature},
                 {"max_tokens", params.max_output_tokens},
                 {"seed", params.seed}};

    json response = post_json(base_url_, "/v1/chat/completions", payload, api_key_env_, retry_);
    try {
        return response.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw BackendError("chat response missing choices[0].message.content: " +
                               std::string(e.what()),
                           200, body_excerpt(response.dump()));
    }
}

OpenAiEmbedder::OpenAiEmbedder(std::string base_url, std::string model,
                               std::string instruction_prefix, std::string api_key_env,
                               HttpRetryPolicy retry)
    : base_url_(std::move(base_url)),
      model_(std::move(model)),
      instruction_prefix_(std::move(instruction_prefix)),
      api_key_env_(std::move(api_key_env)),
      retry_(retry) {}

EmbeddingVector OpenAiEmbedder::embed(const std::string& text) {
    json payload{{"model", model_}, {"input", json::array({instruction_prefix_ + text})}};
    json response = post_json(base_url_, "/v1/embeddings", payload, api_key_env_, retry_);
    EmbeddingVector v;
    try {
        v = response.at("data").at(0).at("embedding").get<EmbeddingVector>();
    } catch (const json::exception& e) {
        throw BackendError("embeddings response missing data[0].embedding: " +
                               std::string(e.what()),
                           200, body_excerpt(response.dump()));
    }
    if (v.empty() || l2_norm(v) == 0.0)
        throw BackendError("embeddings endpoint returned a zero vector");
    normalize_in_place(v);
    return v;
}

} // namespace lmgraph::backends
