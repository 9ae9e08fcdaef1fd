#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "lmgraph/cli/stages.hpp"
#include "lmgraph/cli/synth.hpp"
#include "lmgraph/json_io.hpp"

namespace {

struct GlobalFlags {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> concurrency;
    bool force = false;
    bool to_stdout = false;
};

lmgraph::cli::RunConfig load_with_overrides(const GlobalFlags& flags) {
    lmgraph::cli::RunConfig config = lmgraph::cli::RunConfig::load(flags.config_path);
    if (flags.out_dir) config.out_dir = *flags.out_dir;
    if (flags.seed) config.conversation.master_seed = *flags.seed;
    if (flags.concurrency) config.concurrency = *flags.concurrency;
    return config;
}

void add_globals(CLI::App* cmd, GlobalFlags& flags, bool config_required = true) {
    auto* config = cmd->add_option("--config", flags.config_path, "run config JSON");
    if (config_required) config->required();
    cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", flags.seed, "master seed (overrides config)");
    cmd->add_option("--concurrency", flags.concurrency,
                    "parallel task limit (default: logical cores)");
    cmd->add_flag("--force", flags.force, "regenerate outputs that already exist");
    cmd->add_flag("--stdout", flags.to_stdout, "print the stage's primary artifact to stdout");
}

void maybe_dump(const GlobalFlags& flags, const std::filesystem::path& artifact) {
    if (flags.to_stdout) std::cout << lmgraph::read_text_file(artifact);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"language model graph pipeline: pairwise conversations -> coherence graph -> "
                 "communities -> team benchmarks"};
    app.require_subcommand(1);

    GlobalFlags flags;
    std::string scenario_path;
    std::string synth_out = "scenario";

    auto* converse = app.add_subcommand("converse", "generate pairwise conversations");
    add_globals(converse, flags);
    auto* relate = app.add_subcommand("relate", "compute relationship values and the threshold");
    add_globals(relate, flags);
    auto* graph = app.add_subcommand("graph", "build and export the language model graph");
    add_globals(graph, flags);
    auto* communities = app.add_subcommand("communities", "detect communities via Louvain");
    add_globals(communities, flags);
    auto* evaluate = app.add_subcommand("evaluate", "benchmark teams with majority voting");
    add_globals(evaluate, flags);
    auto* pipeline = app.add_subcommand("pipeline", "run every stage in order");
    add_globals(pipeline, flags);

    auto* synth = app.add_subcommand("synth", "emit a synthetic specialist scenario");
    synth->add_option("--scenario", scenario_path, "scenario spec JSON")->required();
    synth->add_option("--out", synth_out, "directory for registry/planted/config");
    synth->add_option("--seed", flags.seed, "scenario seed (overrides spec)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            lmgraph::synthlab::ScenarioSpec spec =
                lmgraph::synthlab::load_scenario_spec(scenario_path);
            if (flags.seed) spec.seed = *flags.seed;
            auto outputs = lmgraph::cli::emit_scenario(spec, synth_out);
            std::fprintf(stderr, "synth: wrote %s, %s, %s, %s\n",
                         outputs.registry.string().c_str(), outputs.planted.string().c_str(),
                         outputs.config.string().c_str(), outputs.dataset.string().c_str());
            return 0;
        }

        lmgraph::cli::PipelineRunner runner(load_with_overrides(flags), flags.force);
        int failures = 0;
        if (converse->parsed()) {
            failures = runner.converse();
            maybe_dump(flags, runner.paths().conversations());
        } else if (relate->parsed()) {
            failures = runner.relate();
            maybe_dump(flags, runner.paths().relationships());
        } else if (graph->parsed()) {
            failures = runner.graph();
            maybe_dump(flags, runner.paths().graph_json());
        } else if (communities->parsed()) {
            failures = runner.communities();
            maybe_dump(flags, runner.paths().partition());
        } else if (evaluate->parsed()) {
            failures = runner.evaluate();
            maybe_dump(flags, runner.paths().report_json());
        } else if (pipeline->parsed()) {
            failures = runner.run_pipeline();
        }
        return failures > 0 ? 1 : 0;
    } catch (const lmgraph::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 3;
    }
}
