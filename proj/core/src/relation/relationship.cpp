#include "lmgraph/relation/relationship.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "lmgraph/parallel.hpp"

namespace lmgraph::relation {

using backends::EmbeddingVector;

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size())
        throw DomainError("cosine: dimension mismatch " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        dot += a[k] * b[k];
        na += a[k] * a[k];
        nb += b[k] * b[k];
    }
    if (na == 0.0 || nb == 0.0) throw DomainError("cosine: zero vector");
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

EmbeddingVector EmbeddingCache::embed(const std::string& text) {
    if (!enabled_) return inner_.embed(text);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(text);
        if (it != cache_.end()) return it->second;
    }
    EmbeddingVector v = inner_.embed(text);
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(text, std::move(v)).first->second;
}

std::size_t EmbeddingCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

double relationship_value(const Conversation& conversation, backends::Embedder& embedder,
                          bool include_primer_turn) {
    const auto& u = conversation.utterances;
    std::size_t start = include_primer_turn ? 0 : 1;
    double sum = 0.0;
    for (std::size_t k = start; k + 1 < u.size(); k += 2)
        sum += cosine_similarity(embedder.embed(u[k].text), embedder.embed(u[k + 1].text));
    return sum;
}

std::optional<RelationshipRecord> aggregate_pair(const PairKey& pair,
                                                 const std::vector<Conversation>& runs,
                                                 backends::Embedder& embedder,
                                                 bool include_primer_turn) {
    RelationshipRecord record;
    record.pair = pair;
    for (const auto& conversation : runs) {
        if (conversation.termination == Termination::backend_error) {
            std::fprintf(stderr,
                         "warning: pair (%d,%d) run %d ended in BACKEND_ERROR; excluded from "
                         "relationship aggregation\n",
                         pair.i, pair.j, conversation.run);
            continue;
        }
        record.per_run_values.push_back(
            relationship_value(conversation, embedder, include_primer_turn));
    }
    if (record.per_run_values.empty()) return std::nullopt;
    double sum = 0.0;
    for (double v : record.per_run_values) sum += v;
    record.value = sum / static_cast<double>(record.per_run_values.size());
    return record;
}

RelationshipSet compute_relationships(const std::vector<Conversation>& conversations,
                                      backends::Embedder& embedder, bool include_primer_turn,
                                      int concurrency_limit) {
    std::map<PairKey, std::vector<Conversation>> by_pair;
    for (const auto& conversation : conversations)
        by_pair[conversation.pair].push_back(conversation);

    std::vector<PairKey> pairs;
    pairs.reserve(by_pair.size());
    for (const auto& [pair, runs] : by_pair) pairs.push_back(pair);

    std::vector<std::optional<RelationshipRecord>> partial(pairs.size());
    parallel_for(pairs.size(), concurrency_limit, [&](std::size_t k) {
        partial[k] =
            aggregate_pair(pairs[k], by_pair.at(pairs[k]), embedder, include_primer_turn);
    });

    RelationshipSet out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (partial[k])
            out.records.push_back(*partial[k]);
        else
            out.missing_pairs.push_back(pairs[k]);
    }
    return out;
}

double compute_threshold(std::vector<double> values, const ThresholdPolicy& policy) {
    if (policy.kind == ThresholdKind::fixed) return policy.fixed_value;
    if (values.empty()) throw ConfigError("threshold computation needs at least one value");
    std::sort(values.begin(), values.end());

    double q = policy.kind == ThresholdKind::median ? 0.5 : policy.quantile;
    if (q < 0.0 || q > 1.0) throw ConfigError("quantile must lie in [0,1]");

    std::size_t n = values.size();
    if (policy.kind == ThresholdKind::median) {
        if (n % 2 == 1) return values[n / 2];
        return (values[n / 2 - 1] + values[n / 2]) / 2.0;
    }
    double h = static_cast<double>(n - 1) * q;
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return values[n - 1];
    double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

LanguageModelGraph build_graph(const ModelRegistry& registry,
                               const std::vector<RelationshipRecord>& records, double tau) {
    LanguageModelGraph graph;
    graph.nodes = registry;
    graph.threshold = tau;
    int n = static_cast<int>(registry.size());
    for (const auto& record : records) {
        if (record.pair.j > n)
            throw DomainError("relationship record pair exceeds registry size");
        if (record.value >= tau) graph.edges.push_back({record.pair, record.value});
    }
    std::sort(graph.edges.begin(), graph.edges.end(),
              [](const GraphEdge& a, const GraphEdge& b) { return a.pair < b.pair; });
    return graph;
}

} // namespace lmgraph::relation
