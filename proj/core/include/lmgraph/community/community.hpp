#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lmgraph/seeding.hpp"
#include "lmgraph/types.hpp"

namespace lmgraph::community {

// One level of the hierarchy: super-nodes holding original node indices,
// symmetric adjacency, and self-loops from folded intra-community weight.
// Self-loop values are stored in ordered-pair form (A_ss = 2 * folded
// weight), so total_weight_doubled() is invariant across aggregation.
struct AggregatedGraph {
    std::vector<std::vector<int>> members;                     // original node indices
    std::vector<std::vector<std::pair<int, double>>> adjacency; // each edge listed both ways
    std::vector<double> self_loop;                              // A_ss

    std::size_t size() const { return members.size(); }
    double degree(std::size_t node) const;
    double total_weight_doubled() const; // 2m
};

AggregatedGraph level_zero(const LanguageModelGraph& graph);

// Collapses communities into super-nodes; new node ids are dense, ordered by
// the smallest contained node index.
AggregatedGraph aggregate(const AggregatedGraph& graph, const std::vector<int>& community_of);

// Q over ordered node pairs at one aggregation level; 0 when 2m = 0.
double modularity(const AggregatedGraph& graph, const std::vector<int>& community_of,
                  double resolution);

// Weighted modularity of a partition of the model graph.
double modularity(const LanguageModelGraph& graph, const Partition& partition,
                  double resolution = 1.0);

struct LouvainOptions {
    double resolution = 1.0;
    // Invoked after every accepted local move with the incrementally tracked
    // Q and the assignment flattened to original node indices. Test hook for
    // checking the gain bookkeeping against from-scratch recomputation.
    std::function<void(double incremental_q, const std::vector<int>& flat_assignment)>
        move_observer;
};

// Louvain: seeded-shuffled local moving (ties broken toward the smallest
// community id) alternating with aggregation until a level admits no
// improving move. Deterministic given the seeder.
Partition louvain(const LanguageModelGraph& graph, const Seeder& seeder,
                  const LouvainOptions& options = {});

// Exhaustive search over all set partitions; equal-Q ties resolve to the
// lexicographically smallest restricted-growth form. Guarded to <= 10 nodes.
Partition brute_force_best_partition(const LanguageModelGraph& graph, double resolution = 1.0);

} // namespace lmgraph::community
