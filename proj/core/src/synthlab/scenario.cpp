#include "lmgraph/synthlab/scenario.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "lmgraph/backends/synthetic.hpp"
#include "lmgraph/json_io.hpp"

namespace lmgraph::synthlab {

using backends::EmbeddingVector;

int ScenarioSpec::total_models() const {
    return std::accumulate(models_per_group.begin(), models_per_group.end(), 0);
}

void ScenarioSpec::validate() const {
    if (group_count < 1) throw ConfigError("scenario: group_count must be >= 1");
    if (static_cast<int>(models_per_group.size()) != group_count)
        throw ConfigError("scenario: models_per_group must list one size per group");
    for (int size : models_per_group)
        if (size < 1) throw ConfigError("scenario: every group needs at least one model");
    if (separation_degrees <= 0.0 || separation_degrees > 90.0)
        throw ConfigError("scenario: separation must lie in (0, 90] degrees");
    if (noise_scale < 0.0) throw ConfigError("scenario: noise_scale must be >= 0");
    if (inertia < 0.0 || inertia > 1.0) throw ConfigError("scenario: inertia must lie in [0,1]");
    if (dimension < group_count + 1)
        throw ConfigError("scenario: dimension must be >= group_count + 1 (one coordinate is "
                          "reserved for the neutral primer direction)");
}

ScenarioSpec scenario_spec_from_json(const nlohmann::json& j) {
    ScenarioSpec spec;
    spec.group_count = j.at("group_count").get<int>();
    spec.models_per_group = j.at("models_per_group").get<std::vector<int>>();
    spec.dimension = j.value("dimension", 8);
    spec.separation_degrees = j.value("separation_degrees", 90.0);
    spec.noise_scale = j.value("noise_scale", 0.0);
    spec.inertia = j.value("inertia", 1.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.validate();
    return spec;
}

nlohmann::json to_json(const ScenarioSpec& spec) {
    return nlohmann::json{{"group_count", spec.group_count},
                          {"models_per_group", spec.models_per_group},
                          {"dimension", spec.dimension},
                          {"separation_degrees", spec.separation_degrees},
                          {"noise_scale", spec.noise_scale},
                          {"inertia", spec.inertia},
                          {"seed", spec.seed}};
}

ScenarioSpec load_scenario_spec(const std::filesystem::path& path) {
    return scenario_spec_from_json(nlohmann::json::parse(read_text_file(path)));
}

namespace {

// Cholesky factor of the g x g Gram matrix G = (1-c)I + c*11^T; row k is the
// k-th topic in a g-dimensional subspace with exact pairwise cosine c.
std::vector<std::vector<double>> cholesky_topics(int g, double cosine) {
    std::vector<std::vector<double>> gram(static_cast<std::size_t>(g),
                                          std::vector<double>(static_cast<std::size_t>(g)));
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c) gram[r][c] = r == c ? 1.0 : cosine;

    std::vector<std::vector<double>> low(static_cast<std::size_t>(g),
                                         std::vector<double>(static_cast<std::size_t>(g), 0.0));
    for (int r = 0; r < g; ++r) {
        for (int c = 0; c <= r; ++c) {
            double sum = gram[r][c];
            for (int k = 0; k < c; ++k) sum -= low[r][k] * low[c][k];
            if (r == c) {
                if (sum <= 0.0)
                    throw ConfigError("scenario: the requested pairwise angles are infeasible "
                                      "for " + std::to_string(g) + " topic vectors");
                low[r][c] = std::sqrt(sum);
            } else {
                low[r][c] = sum / low[c][c];
            }
        }
    }
    return low;
}

} // namespace

Scenario generate_scenario(const ScenarioSpec& spec) {
    spec.validate();
    int g = spec.group_count;
    int d = spec.dimension;
    double cosine = std::cos(spec.separation_degrees * 3.14159265358979323846 / 180.0);
    if (std::fabs(cosine) < 1e-15) cosine = 0.0; // exact orthogonality at 90 degrees

    auto low = cholesky_topics(g, cosine);

    Scenario scenario;
    scenario.embedding_dimension = d;
    for (int group = 0; group < g; ++group) {
        EmbeddingVector topic(static_cast<std::size_t>(d), 0.0);
        // Coordinate 0 is reserved for the neutral primer direction.
        for (int k = 0; k < g; ++k) topic[static_cast<std::size_t>(k + 1)] = low[group][k];
        backends::normalize_in_place(topic);
        scenario.group_topics.push_back(std::move(topic));
    }

    EmbeddingVector neutral(static_cast<std::size_t>(d), 0.0);
    neutral[0] = 1.0;
    scenario.start_prompt = backends::encode_state_text(neutral);

    std::vector<ModelRef> models;
    std::map<std::string, int> planted;
    int global = 0;
    for (int group = 0; group < g; ++group) {
        for (int member = 0; member < spec.models_per_group[static_cast<std::size_t>(group)];
             ++member, ++global) {
            ModelRef model;
            char buffer[32];
            std::snprintf(buffer, sizeof(buffer), "agent-%02d", global + 1);
            model.id = buffer;
            model.type_tag = "group-" + std::to_string(group);
            model.cot_enabled = true;
            model.backend.kind = BackendKind::synthetic;
            model.backend.topic = scenario.group_topics[static_cast<std::size_t>(group)];
            model.backend.inertia = spec.inertia;
            model.backend.noise = spec.noise_scale;
            planted[model.id] = group;
            models.push_back(std::move(model));
        }
    }
    scenario.registry = ModelRegistry(std::move(models));

    std::vector<std::string> order;
    for (const auto& model : scenario.registry.models()) order.push_back(model.id);
    scenario.planted = canonicalize_partition(planted, order, std::nullopt);
    return scenario;
}

double adjusted_rand_index(const Partition& found, const Partition& planted) {
    if (found.assignment.size() != planted.assignment.size())
        throw DomainError("ARI: partitions cover different node counts");
    for (const auto& [id, community] : found.assignment)
        if (!planted.assignment.count(id))
            throw DomainError("ARI: node '" + id + "' missing from the other partition");

    std::map<std::pair<int, int>, long long> contingency;
    std::map<int, long long> row_sums, col_sums;
    long long n = 0;
    for (const auto& [id, a] : found.assignment) {
        int b = planted.assignment.at(id);
        ++contingency[{a, b}];
        ++row_sums[a];
        ++col_sums[b];
        ++n;
    }

    auto pairs2 = [](long long count) { return static_cast<double>(count) * (count - 1) / 2.0; };
    double index = 0.0;
    for (const auto& [key, count] : contingency) index += pairs2(count);
    double sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, count] : row_sums) sum_rows += pairs2(count);
    for (const auto& [key, count] : col_sums) sum_cols += pairs2(count);
    double total_pairs = pairs2(n);
    if (total_pairs == 0.0) return 1.0; // single node: identical by definition

    double expected = sum_rows * sum_cols / total_pairs;
    double max_index = (sum_rows + sum_cols) / 2.0;
    double denominator = max_index - expected;
    if (denominator == 0.0) {
        // Both partitions trivial (all singletons or all together) and equal.
        return 1.0;
    }
    return (index - expected) / denominator;
}

} // namespace lmgraph::synthlab
