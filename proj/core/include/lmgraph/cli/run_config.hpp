#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include <nlohmann/json.hpp>

#include "lmgraph/backends/chat.hpp"
#include "lmgraph/relation/relationship.hpp"
#include "lmgraph/types.hpp"

namespace lmgraph::cli {

struct EmbedderConfig {
    std::string kind = "hashing"; // decoding | hashing | openai
    int dimension = 64;
    std::string base_url;
    std::string model;
    std::string instruction_prefix;
    std::string api_key_env;
};

struct RelationConfig {
    relation::ThresholdPolicy policy = relation::ThresholdPolicy::median();
    bool include_primer_turn = true;
    bool embedding_cache = true;
};

struct CommunityConfig {
    double resolution = 1.0;
};

struct EvaluationConfig {
    std::vector<std::filesystem::path> datasets;
    int trials = 5;
    int random_team_size = 3;
    int random_team_count = 5;
    std::optional<std::string> self_consistency_model;
    int self_consistency_n = 10;
    bool use_cot = true;
};

struct RunConfig {
    std::filesystem::path registry_path;
    ConversationConfig conversation;
    EmbedderConfig embedder;
    RelationConfig relation;
    CommunityConfig community;
    EvaluationConfig evaluation;
    int concurrency = 0; // 0 = logical cores
    std::filesystem::path out_dir = "out";

    // Relative paths resolve against the config file's directory; referenced
    // inputs must exist at load time.
    static RunConfig load(const std::filesystem::path& path);

    nlohmann::json to_json() const;

    // Stable hash of the semantic configuration (prompts, seeds, policies,
    // registry and dataset contents). Excludes concurrency and output paths,
    // so artifacts are byte-identical across those.
    std::string digest() const;

    void validate() const;
};

// Default conversation settings: debate-style system prompt, open-ended
// starter, "END DISCUSSION" stop token, 5 turns, 5 runs.
ConversationConfig default_conversation_config();

std::unique_ptr<backends::Embedder> make_embedder(const EmbedderConfig& config);

} // namespace lmgraph::cli
