#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmgraph/errors.hpp"

namespace lmgraph {

enum class BackendKind { openai, scripted, synthetic };

std::string to_string(BackendKind kind);
BackendKind backend_kind_from_string(const std::string& text);

// Endpoint descriptor for one model. Only the fields of the active kind are
// meaningful; the rest stay at their defaults.
struct BackendDescriptor {
    BackendKind kind = BackendKind::scripted;

    // openai
    std::string base_url;
    std::string model;
    std::string api_key_env;

    // scripted
    std::vector<std::string> lines;
    std::string file;
    bool cycle = false;

    // synthetic
    std::vector<double> topic;
    double inertia = 1.0;
    double noise = 0.0;

    bool operator==(const BackendDescriptor&) const = default;
};

struct ModelRef {
    std::string id;
    BackendDescriptor backend;
    std::optional<std::string> type_tag;
    bool cot_enabled = true;

    bool operator==(const ModelRef&) const = default;
};

// Ordered model list. Enumeration order is the canonical tie-break order for
// everything downstream.
class ModelRegistry {
public:
    ModelRegistry() = default;
    explicit ModelRegistry(std::vector<ModelRef> models);

    std::size_t size() const { return models_.size(); }
    bool empty() const { return models_.empty(); }

    // 1-based, matching pair indices.
    const ModelRef& at(int index) const;

    const std::vector<ModelRef>& models() const { return models_; }

    // 1-based index of a model id; throws ConfigError when unknown.
    int index_of(const std::string& id) const;
    bool contains(const std::string& id) const;

    bool operator==(const ModelRegistry&) const = default;

private:
    std::vector<ModelRef> models_;
};

// Unordered model pair, stored as 1-based indices with i < j.
struct PairKey {
    int i = 0;
    int j = 0;

    PairKey() = default;
    PairKey(int i_, int j_);

    auto operator<=>(const PairKey&) const = default;
};

struct SamplingParams {
    double temperature = 0.7;
    int max_output_tokens = 512;

    bool operator==(const SamplingParams&) const = default;
};

struct ConversationConfig {
    std::string system_prompt;
    std::string start_prompt;
    std::string stop_token = "END DISCUSSION";
    int max_turns = 5;
    int runs_per_pair = 5;
    SamplingParams sampling;
    std::uint64_t master_seed = 0;

    void validate() const;

    bool operator==(const ConversationConfig&) const = default;
};

struct Utterance {
    int index = 0; // 1-based
    std::string speaker;
    std::string text;

    bool operator==(const Utterance&) const = default;
};

enum class Termination { stop_token, max_turns, backend_error };

std::string to_string(Termination t);
Termination termination_from_string(const std::string& text);

struct Conversation {
    PairKey pair;
    int run = 0;
    std::string first_speaker;
    std::vector<Utterance> utterances;
    Termination termination = Termination::max_turns;

    bool operator==(const Conversation&) const = default;
};

struct RelationshipRecord {
    PairKey pair;
    std::vector<double> per_run_values;
    double value = 0.0; // arithmetic mean of per_run_values

    bool operator==(const RelationshipRecord&) const = default;
};

struct GraphEdge {
    PairKey pair;
    double weight = 0.0;

    bool operator==(const GraphEdge&) const = default;
};

// Weighted undirected graph over the registry. Isolated nodes are retained;
// every edge weight is >= threshold by construction.
struct LanguageModelGraph {
    ModelRegistry nodes;
    std::vector<GraphEdge> edges;
    double threshold = 0.0;

    bool operator==(const LanguageModelGraph&) const = default;
};

// Model id -> dense 0-based community id, communities ordered by smallest
// member index. `modularity` is set by detection, absent on planted truth.
struct Partition {
    std::map<std::string, int> assignment;
    std::optional<double> modularity;

    std::size_t community_count() const;
    std::vector<std::vector<std::string>> communities() const;

    bool operator==(const Partition&) const = default;
};

// Renumbers community labels to dense 0-based ids ordered by the smallest
// member index within `order` (registry enumeration order).
Partition canonicalize_partition(const std::map<std::string, int>& raw_assignment,
                                 const std::vector<std::string>& order,
                                 std::optional<double> modularity);

// All (i, j) with i < j in lexicographic order; length N(N-1)/2.
std::vector<PairKey> enumerate_pairs(const ModelRegistry& registry);

} // namespace lmgraph
