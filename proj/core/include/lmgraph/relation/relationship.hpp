#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>

#include "lmgraph/backends/chat.hpp"
#include "lmgraph/types.hpp"

namespace lmgraph::relation {

double cosine_similarity(const backends::EmbeddingVector& a, const backends::EmbeddingVector& b);

// Thread-safe per-text memo in front of an embedder. Transparent: enabling or
// disabling it changes no output value.
class EmbeddingCache : public backends::Embedder {
public:
    explicit EmbeddingCache(backends::Embedder& inner, bool enabled = true)
        : inner_(inner), enabled_(enabled) {}

    backends::EmbeddingVector embed(const std::string& text) override;
    int dimension() const override { return inner_.dimension(); }

    std::size_t size() const;

private:
    backends::Embedder& inner_;
    bool enabled_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, backends::EmbeddingVector> cache_;
};

// Sum of cosine similarities over the paired utterances of each complete
// turn; 0 when no complete turn exists. With include_primer_turn = false the
// pairing starts at the first model-generated utterance instead of the
// primer, dropping one pair.
double relationship_value(const Conversation& conversation, backends::Embedder& embedder,
                          bool include_primer_turn = true);

// Mean of per-run values with BACKEND_ERROR runs excluded; nullopt when no
// run is usable (the pair is then missing: it joins neither the threshold
// computation nor the edge set).
std::optional<RelationshipRecord> aggregate_pair(const PairKey& pair,
                                                 const std::vector<Conversation>& runs,
                                                 backends::Embedder& embedder,
                                                 bool include_primer_turn = true);

struct RelationshipSet {
    std::vector<RelationshipRecord> records; // sorted by pair
    std::vector<PairKey> missing_pairs;
};

// Per-run values for every pair in the transcript batch, aggregated across
// runs. Embedding calls for distinct conversations may run concurrently.
RelationshipSet compute_relationships(const std::vector<Conversation>& conversations,
                                      backends::Embedder& embedder, bool include_primer_turn,
                                      int concurrency_limit);

enum class ThresholdKind { median, fixed, quantile };

struct ThresholdPolicy {
    ThresholdKind kind = ThresholdKind::median;
    double fixed_value = 0.0;
    double quantile = 0.5;

    static ThresholdPolicy median() { return {ThresholdKind::median, 0.0, 0.5}; }
    static ThresholdPolicy fixed(double tau) { return {ThresholdKind::fixed, tau, 0.5}; }
    static ThresholdPolicy at_quantile(double q) { return {ThresholdKind::quantile, 0.0, q}; }
};

// MEDIAN: middle element (odd count) or mean of the two middle elements.
// QUANTILE(q): linear order-statistic interpolation at h = (n-1)q.
double compute_threshold(std::vector<double> values, const ThresholdPolicy& policy);

// Edge (i,j) with weight r_ij included iff r_ij >= tau (inclusive); all nodes
// retained even when isolated.
LanguageModelGraph build_graph(const ModelRegistry& registry,
                               const std::vector<RelationshipRecord>& records, double tau);

} // namespace lmgraph::relation
