#include "lmgraph/types.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace lmgraph {

std::string to_string(BackendKind kind) {
    switch (kind) {
        case BackendKind::openai: return "openai";
        case BackendKind::scripted: return "scripted";
        case BackendKind::synthetic: return "synthetic";
    }
    throw DomainError("unknown backend kind");
}

BackendKind backend_kind_from_string(const std::string& text) {
    if (text == "openai") return BackendKind::openai;
    if (text == "scripted") return BackendKind::scripted;
    if (text == "synthetic") return BackendKind::synthetic;
    throw ConfigError("unknown backend kind: '" + text + "'");
}

ModelRegistry::ModelRegistry(std::vector<ModelRef> models) : models_(std::move(models)) {
    std::unordered_set<std::string> seen;
    for (const auto& model : models_) {
        if (model.id.empty()) throw ConfigError("registry contains a model with an empty id");
        if (!seen.insert(model.id).second)
            throw ConfigError("registry contains duplicate model id '" + model.id + "'");
    }
}

const ModelRef& ModelRegistry::at(int index) const {
    if (index < 1 || static_cast<std::size_t>(index) > models_.size())
        throw DomainError("model index " + std::to_string(index) + " out of range");
    return models_[static_cast<std::size_t>(index - 1)];
}

int ModelRegistry::index_of(const std::string& id) const {
    for (std::size_t k = 0; k < models_.size(); ++k)
        if (models_[k].id == id) return static_cast<int>(k + 1);
    throw ConfigError("model id '" + id + "' not present in registry");
}

bool ModelRegistry::contains(const std::string& id) const {
    return std::any_of(models_.begin(), models_.end(),
                       [&](const ModelRef& m) { return m.id == id; });
}

PairKey::PairKey(int i_, int j_) : i(i_), j(j_) {
    if (i < 1 || j <= i)
        throw DomainError("invalid pair (" + std::to_string(i_) + "," + std::to_string(j_) +
                          "): need 1 <= i < j");
}

void ConversationConfig::validate() const {
    if (stop_token.empty()) throw ConfigError("stop_token must be non-empty");
    if (max_turns < 1) throw ConfigError("max_turns must be >= 1");
    if (runs_per_pair < 1) throw ConfigError("runs_per_pair must be >= 1");
    if (sampling.temperature < 0.0) throw ConfigError("temperature must be >= 0");
    if (sampling.max_output_tokens < 1) throw ConfigError("max_output_tokens must be >= 1");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::stop_token: return "STOP_TOKEN";
        case Termination::max_turns: return "MAX_TURNS";
        case Termination::backend_error: return "BACKEND_ERROR";
    }
    throw DomainError("unknown termination");
}

Termination termination_from_string(const std::string& text) {
    if (text == "STOP_TOKEN") return Termination::stop_token;
    if (text == "MAX_TURNS") return Termination::max_turns;
    if (text == "BACKEND_ERROR") return Termination::backend_error;
    throw ConfigError("unknown termination: '" + text + "'");
}

std::size_t Partition::community_count() const {
    std::set<int> ids;
    for (const auto& [id, community] : assignment) ids.insert(community);
    return ids.size();
}

std::vector<std::vector<std::string>> Partition::communities() const {
    std::size_t count = community_count();
    std::vector<std::vector<std::string>> groups(count);
    for (const auto& [id, community] : assignment) {
        if (community < 0 || static_cast<std::size_t>(community) >= count)
            throw DomainError("partition community ids are not dense 0-based");
        groups[static_cast<std::size_t>(community)].push_back(id);
    }
    return groups;
}

Partition canonicalize_partition(const std::map<std::string, int>& raw_assignment,
                                 const std::vector<std::string>& order,
                                 std::optional<double> modularity) {
    if (raw_assignment.size() != order.size())
        throw DomainError("partition does not cover the node set exactly");

    std::map<int, int> first_seen; // raw label -> dense id, in `order` traversal
    int next_id = 0;
    for (const auto& id : order) {
        auto it = raw_assignment.find(id);
        if (it == raw_assignment.end())
            throw DomainError("node '" + id + "' missing from partition");
        if (first_seen.emplace(it->second, next_id).second) ++next_id;
    }

    Partition out;
    out.modularity = modularity;
    for (const auto& [id, raw] : raw_assignment) out.assignment[id] = first_seen.at(raw);
    return out;
}

std::vector<PairKey> enumerate_pairs(const ModelRegistry& registry) {
    int n = static_cast<int>(registry.size());
    if (n < 2) throw ConfigError("pair enumeration requires at least 2 models, got " +
                                 std::to_string(n));
    std::vector<PairKey> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    return pairs;
}

} // namespace lmgraph
