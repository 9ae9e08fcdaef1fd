#include "lmgraph/evalharness/teams.hpp"

#include <algorithm>
#include <numeric>

namespace lmgraph::evalharness {

std::string to_string(TeamProtocol protocol) {
    return protocol == TeamProtocol::majority ? "MAJORITY" : "SELF_CONSISTENCY";
}

void TeamSpec::validate() const {
    if (name.empty()) throw ConfigError("team has no name");
    if (protocol == TeamProtocol::self_consistency) {
        if (members.size() != 1)
            throw ConfigError("team '" + name + "': SELF_CONSISTENCY requires exactly one member");
        if (self_consistency_n < 1)
            throw ConfigError("team '" + name + "': self-consistency n must be >= 1");
    } else if (members.size() < 2) {
        throw ConfigError("team '" + name + "': MAJORITY requires at least two members");
    }
}

namespace {

TeamSpec single_model_entry(std::string name, std::string member) {
    TeamSpec team;
    team.name = std::move(name);
    team.members = {std::move(member)};
    team.protocol = TeamProtocol::self_consistency;
    team.self_consistency_n = 1; // single shot
    return team;
}

TeamSpec group_entry(std::string name, std::vector<std::string> members) {
    if (members.size() == 1) return single_model_entry(std::move(name), std::move(members[0]));
    TeamSpec team;
    team.name = std::move(name);
    team.members = std::move(members);
    team.protocol = TeamProtocol::majority;
    return team;
}

} // namespace

std::vector<TeamSpec> build_baseline_teams(const ModelRegistry& registry,
                                           const std::optional<Partition>& partition,
                                           const BaselineTeamOptions& options,
                                           const Seeder& seeder) {
    int n = static_cast<int>(registry.size());
    if (options.random_team_size < 1 || options.random_team_size > n)
        throw ConfigError("random team size " + std::to_string(options.random_team_size) +
                          " not in [1, " + std::to_string(n) + "]");
    if (options.random_team_count < 0) throw ConfigError("random team count must be >= 0");

    std::vector<TeamSpec> teams;

    if (partition) {
        for (const auto& members : partition->communities()) {
            std::string name = "community-" + std::to_string(teams.size());
            teams.push_back(group_entry(std::move(name), members));
        }
    }

    {
        std::vector<std::string> everyone;
        for (const auto& model : registry.models()) everyone.push_back(model.id);
        teams.push_back(group_entry("all-models", std::move(everyone)));
    }

    for (int t = 0; t < options.random_team_count; ++t) {
        std::vector<int> indices(static_cast<std::size_t>(n));
        std::iota(indices.begin(), indices.end(), 0);
        seeded_shuffle(indices, seeder.derive("random_team:" + std::to_string(t)));
        indices.resize(static_cast<std::size_t>(options.random_team_size));
        std::sort(indices.begin(), indices.end());
        std::vector<std::string> members;
        for (int index : indices) members.push_back(registry.at(index + 1).id);
        TeamSpec team = group_entry("random-" + std::to_string(t + 1), std::move(members));
        team.is_random = true;
        teams.push_back(std::move(team));
    }

    {
        std::vector<std::string> tag_order;
        std::map<std::string, std::vector<std::string>> by_tag;
        for (const auto& model : registry.models()) {
            if (!model.type_tag) continue;
            if (!by_tag.count(*model.type_tag)) tag_order.push_back(*model.type_tag);
            by_tag[*model.type_tag].push_back(model.id);
        }
        for (const auto& tag : tag_order)
            teams.push_back(group_entry("type-" + tag, by_tag.at(tag)));
    }

    if (options.self_consistency_model) {
        const std::string& id = *options.self_consistency_model;
        if (!registry.contains(id))
            throw ConfigError("self-consistency model '" + id + "' not in registry");
        TeamSpec team = single_model_entry("self-consistency-" + id, id);
        team.self_consistency_n = options.self_consistency_n;
        teams.push_back(std::move(team));
    }

    for (const auto& team : teams) team.validate();
    return teams;
}

} // namespace lmgraph::evalharness
