#pragma once

#include "lmgraph/cli/run_config.hpp"
#include "lmgraph/synthlab/scenario.hpp"

namespace lmgraph::cli {

struct SynthOutputs {
    std::filesystem::path registry;
    std::filesystem::path planted;
    std::filesystem::path config;
    std::filesystem::path dataset;
};

// Materializes a synthetic scenario into a directory: registry.json,
// planted.json, a smoke-test dataset, and a ready-to-run config.json wired to
// the decoding embedder and the scenario's encoded start prompt.
SynthOutputs emit_scenario(const synthlab::ScenarioSpec& spec,
                           const std::filesystem::path& directory);

// The RunConfig that emit_scenario serializes, for in-process use.
RunConfig scenario_run_config(const synthlab::Scenario& scenario,
                              const synthlab::ScenarioSpec& spec,
                              const std::filesystem::path& directory);

} // namespace lmgraph::cli
