#include "lmgraph/community/community.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lmgraph::community {

double AggregatedGraph::degree(std::size_t node) const {
    double k = self_loop[node];
    for (const auto& [neighbor, weight] : adjacency[node]) k += weight;
    return k;
}

double AggregatedGraph::total_weight_doubled() const {
    double two_m = 0.0;
    for (std::size_t s = 0; s < size(); ++s) two_m += degree(s);
    return two_m;
}

AggregatedGraph level_zero(const LanguageModelGraph& graph) {
    AggregatedGraph g;
    std::size_t n = graph.nodes.size();
    g.members.resize(n);
    g.adjacency.resize(n);
    g.self_loop.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) g.members[k] = {static_cast<int>(k)};
    for (const auto& edge : graph.edges) {
        int a = edge.pair.i - 1;
        int b = edge.pair.j - 1;
        g.adjacency[static_cast<std::size_t>(a)].emplace_back(b, edge.weight);
        g.adjacency[static_cast<std::size_t>(b)].emplace_back(a, edge.weight);
    }
    return g;
}

AggregatedGraph aggregate(const AggregatedGraph& graph, const std::vector<int>& community_of) {
    if (community_of.size() != graph.size())
        throw DomainError("aggregation assignment does not cover the node set");

    // Dense new ids ordered by smallest contained node index.
    std::map<int, int> renumber;
    for (std::size_t s = 0; s < graph.size(); ++s) renumber.emplace(community_of[s], -1);
    {
        int next = 0;
        for (std::size_t s = 0; s < graph.size(); ++s) {
            int& id = renumber.at(community_of[s]);
            if (id < 0) id = next++;
        }
    }

    AggregatedGraph out;
    out.members.resize(renumber.size());
    out.adjacency.resize(renumber.size());
    out.self_loop.assign(renumber.size(), 0.0);

    for (std::size_t s = 0; s < graph.size(); ++s) {
        std::size_t c = static_cast<std::size_t>(renumber.at(community_of[s]));
        out.members[c].insert(out.members[c].end(), graph.members[s].begin(),
                              graph.members[s].end());
        out.self_loop[c] += graph.self_loop[s];
    }
    for (auto& members : out.members) std::sort(members.begin(), members.end());

    std::map<std::pair<int, int>, double> cross;
    for (std::size_t s = 0; s < graph.size(); ++s) {
        int cu = renumber.at(community_of[s]);
        for (const auto& [neighbor, weight] : graph.adjacency[s]) {
            int cv = renumber.at(community_of[static_cast<std::size_t>(neighbor)]);
            if (cu == cv)
                out.self_loop[static_cast<std::size_t>(cu)] += weight; // both listings -> 2w
            else
                cross[{cu, cv}] += weight;
        }
    }
    for (const auto& [key, weight] : cross)
        out.adjacency[static_cast<std::size_t>(key.first)].emplace_back(key.second, weight);
    return out;
}

double modularity(const AggregatedGraph& graph, const std::vector<int>& community_of,
                  double resolution) {
    if (community_of.size() != graph.size())
        throw DomainError("modularity assignment does not cover the node set");
    double two_m = graph.total_weight_doubled();
    if (two_m == 0.0) return 0.0;

    std::map<int, double> sigma_in, sigma_tot;
    for (std::size_t s = 0; s < graph.size(); ++s) {
        int c = community_of[s];
        sigma_tot[c] += graph.degree(s);
        sigma_in[c] += graph.self_loop[s];
        for (const auto& [neighbor, weight] : graph.adjacency[s])
            if (community_of[static_cast<std::size_t>(neighbor)] == c) sigma_in[c] += weight;
    }

    double q = 0.0;
    for (const auto& [c, tot] : sigma_tot) {
        double in = sigma_in.count(c) ? sigma_in.at(c) : 0.0;
        q += in / two_m - resolution * (tot / two_m) * (tot / two_m);
    }
    return q;
}

double modularity(const LanguageModelGraph& graph, const Partition& partition,
                  double resolution) {
    AggregatedGraph g = level_zero(graph);
    std::vector<int> community_of(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const std::string& id = graph.nodes.at(static_cast<int>(k) + 1).id;
        auto it = partition.assignment.find(id);
        if (it == partition.assignment.end())
            throw DomainError("node '" + id + "' missing from partition");
        community_of[k] = it->second;
    }
    return modularity(g, community_of, resolution);
}

namespace {

struct LevelState {
    const AggregatedGraph& graph;
    double two_m;
    double resolution;
    std::vector<int> community_of;
    std::vector<double> sigma_tot; // indexed by community id (== initial node id)
    std::vector<double> sigma_in;

    explicit LevelState(const AggregatedGraph& g, double gamma)
        : graph(g), two_m(g.total_weight_doubled()), resolution(gamma) {
        community_of.resize(g.size());
        std::iota(community_of.begin(), community_of.end(), 0);
        sigma_tot.resize(g.size());
        sigma_in.resize(g.size());
        for (std::size_t s = 0; s < g.size(); ++s) {
            sigma_tot[s] = g.degree(s);
            sigma_in[s] = g.self_loop[s];
        }
    }

    // Gain of inserting node u (currently detached) into community c.
    double insertion_gain(double k_u, double k_u_to_c, double a_uu, int c) const {
        double tot = sigma_tot[static_cast<std::size_t>(c)];
        return (2.0 * k_u_to_c + a_uu) / two_m -
               resolution * (2.0 * tot * k_u + k_u * k_u) / (two_m * two_m);
    }
};

} // namespace

Partition louvain(const LanguageModelGraph& graph, const Seeder& seeder,
                  const LouvainOptions& options) {
    std::size_t n_original = graph.nodes.size();
    std::vector<std::string> order;
    order.reserve(n_original);
    for (const auto& model : graph.nodes.models()) order.push_back(model.id);

    AggregatedGraph level = level_zero(graph);
    double gamma = options.resolution;

    auto finalize = [&](const AggregatedGraph& final_level) {
        std::map<std::string, int> raw;
        for (std::size_t s = 0; s < final_level.size(); ++s)
            for (int member : final_level.members[s])
                raw[order[static_cast<std::size_t>(member)]] = static_cast<int>(s);
        Partition partition = canonicalize_partition(raw, order, std::nullopt);
        partition.modularity = modularity(graph, partition, gamma);
        return partition;
    };

    if (level.total_weight_doubled() == 0.0) return finalize(level);

    double q = modularity(level, [&] {
        std::vector<int> singletons(level.size());
        std::iota(singletons.begin(), singletons.end(), 0);
        return singletons;
    }(), gamma);

    auto flatten = [&](const LevelState& state) {
        std::vector<int> flat(n_original, 0);
        for (std::size_t s = 0; s < state.graph.size(); ++s)
            for (int member : state.graph.members[s])
                flat[static_cast<std::size_t>(member)] = state.community_of[s];
        return flat;
    };

    for (int depth = 0;; ++depth) {
        LevelState state(level, gamma);
        bool any_move_at_level = false;

        for (int pass = 0;; ++pass) {
            std::vector<std::size_t> visit(level.size());
            std::iota(visit.begin(), visit.end(), std::size_t{0});
            seeded_shuffle(visit, seeder.derive("louvain:level=" + std::to_string(depth) +
                                                ":pass=" + std::to_string(pass)));

            bool moved_this_pass = false;
            for (std::size_t u : visit) {
                int home = state.community_of[u];
                double k_u = level.degree(u);
                double a_uu = level.self_loop[u];

                // Weight from u to each candidate community (sorted by id, so
                // strict improvement keeps the smallest id on ties).
                std::map<int, double> weight_to;
                weight_to[home] = 0.0;
                for (const auto& [neighbor, weight] : level.adjacency[u])
                    weight_to[state.community_of[static_cast<std::size_t>(neighbor)]] += weight;

                // Detach u from its community.
                state.community_of[u] = -1;
                state.sigma_tot[static_cast<std::size_t>(home)] -= k_u;
                state.sigma_in[static_cast<std::size_t>(home)] -=
                    2.0 * weight_to.at(home) + a_uu;

                double stay_gain = state.insertion_gain(k_u, weight_to.at(home), a_uu, home);
                int best = home;
                double best_gain = stay_gain;
                for (const auto& [candidate, k_u_to_c] : weight_to) {
                    if (candidate == home) continue;
                    double gain = state.insertion_gain(k_u, k_u_to_c, a_uu, candidate);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best = candidate;
                    }
                }

                state.community_of[u] = best;
                state.sigma_tot[static_cast<std::size_t>(best)] += k_u;
                state.sigma_in[static_cast<std::size_t>(best)] +=
                    2.0 * weight_to.at(best) + a_uu;

                if (best != home) {
                    moved_this_pass = true;
                    any_move_at_level = true;
                    q += best_gain - stay_gain;
                    if (options.move_observer) options.move_observer(q, flatten(state));
                }
            }
            if (!moved_this_pass) break;
        }

        if (!any_move_at_level) break;
        level = aggregate(level, state.community_of);
    }

    return finalize(level);
}

Partition brute_force_best_partition(const LanguageModelGraph& graph, double resolution) {
    std::size_t n = graph.nodes.size();
    if (n == 0) throw DomainError("brute force requires a non-empty graph");
    if (n > 10)
        throw DomainError("brute force partition search refused for " + std::to_string(n) +
                          " nodes (limit 10)");

    AggregatedGraph g = level_zero(graph);

    std::vector<int> rgs(n, 0);
    std::vector<int> best_rgs;
    double best_q = 0.0;
    bool have_best = false;

    // Restricted growth strings in lexicographic order; the first maximizer
    // encountered is therefore the smallest canonical form among ties.
    std::function<void(std::size_t, int)> enumerate = [&](std::size_t position, int max_used) {
        if (position == n) {
            double q = modularity(g, rgs, resolution);
            if (!have_best || q > best_q) {
                have_best = true;
                best_q = q;
                best_rgs = rgs;
            }
            return;
        }
        for (int label = 0; label <= max_used + 1; ++label) {
            rgs[position] = label;
            enumerate(position + 1, std::max(max_used, label));
        }
    };
    enumerate(1, 0); // node 0 is pinned to label 0

    std::map<std::string, int> raw;
    std::vector<std::string> order;
    for (std::size_t k = 0; k < n; ++k) {
        order.push_back(graph.nodes.at(static_cast<int>(k) + 1).id);
        raw[order.back()] = best_rgs[k];
    }
    return canonicalize_partition(raw, order, best_q);
}

} // namespace lmgraph::community
