#pragma once

#include <optional>

#include "lmgraph/seeding.hpp"
#include "lmgraph/types.hpp"

namespace lmgraph::evalharness {

enum class TeamProtocol { majority, self_consistency };

std::string to_string(TeamProtocol protocol);

struct TeamSpec {
    std::string name;
    std::vector<std::string> members;
    TeamProtocol protocol = TeamProtocol::majority;
    int self_consistency_n = 10;
    bool is_random = false; // random teams merge into one Random@k report row

    void validate() const;
};

struct BaselineTeamOptions {
    int random_team_size = 3;
    int random_team_count = 5;
    std::optional<std::string> self_consistency_model;
    int self_consistency_n = 10;
};

// Emits, in order: one team per detected community (singletons become
// single-model entries), the all-models ensemble, `random_team_count` random
// teams of `random_team_size` distinct members, one team per distinct
// type_tag, and a self-consistency spec for the designated model when one is
// configured.
std::vector<TeamSpec> build_baseline_teams(const ModelRegistry& registry,
                                           const std::optional<Partition>& partition,
                                           const BaselineTeamOptions& options,
                                           const Seeder& seeder);

} // namespace lmgraph::evalharness
