#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "lmgraph/backends/chat.hpp"
#include "lmgraph/types.hpp"

namespace lmgraph::synthlab {

// Planted-partition scenario: g groups of synthetic specialists, one shared
// unit topic vector per group, adjacent group topics at the requested
// pairwise angle. Topics are built by Cholesky factorization of the cosine
// Gram matrix, giving exact pairwise cosines, and live in the subspace
// orthogonal to the first basis vector so that non-encoded text (which the
// decoding embedder maps to e1) is neutral with respect to every topic.
struct ScenarioSpec {
    int group_count = 3;
    std::vector<int> models_per_group;
    int dimension = 8;
    double separation_degrees = 90.0; // pairwise angle between group topics
    double noise_scale = 0.0;
    double inertia = 1.0;
    std::uint64_t seed = 0;

    int total_models() const;
    void validate() const;
};

ScenarioSpec scenario_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioSpec& spec);
ScenarioSpec load_scenario_spec(const std::filesystem::path& path);

struct Scenario {
    ModelRegistry registry;   // synthetic backends, type_tag = group label
    Partition planted;        // ground truth, no modularity
    std::string start_prompt; // encoded neutral vector (e1)
    int embedding_dimension = 0;
    std::vector<backends::EmbeddingVector> group_topics;
};

Scenario generate_scenario(const ScenarioSpec& spec);

// Chance-corrected partition agreement via the contingency-table formula:
// 1.0 iff identical up to relabeling, expected 0 for independent partitions.
// Degenerate cases with a zero denominator (both trivial and identical)
// return 1.0.
double adjusted_rand_index(const Partition& found, const Partition& planted);

} // namespace lmgraph::synthlab
