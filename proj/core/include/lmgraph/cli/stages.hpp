#pragma once

#include "lmgraph/cli/run_config.hpp"
#include "lmgraph/seeding.hpp"

namespace lmgraph::cli {

struct ArtifactPaths {
    std::filesystem::path out;

    std::filesystem::path conversations() const { return out / "conversations.jsonl"; }
    std::filesystem::path relationships() const { return out / "relationships.json"; }
    std::filesystem::path graph_json() const { return out / "graph.json"; }
    std::filesystem::path graph_graphml() const { return out / "graph.graphml"; }
    std::filesystem::path graph_dot() const { return out / "graph.dot"; }
    std::filesystem::path partition() const { return out / "partition.json"; }
    std::filesystem::path report_json() const { return out / "report.json"; }
    std::filesystem::path report_md() const { return out / "report.md"; }
    std::filesystem::path manifest() const { return out / "manifest.json"; }
};

// Runs the pipeline stages against a run directory. Each stage checks the
// config digest against the directory's manifest, skips itself when its
// outputs already exist (unless forced), and records its outputs in the
// manifest. Stage methods return the number of failed units (0 = clean).
class PipelineRunner {
public:
    explicit PipelineRunner(RunConfig config, bool force = false, bool quiet = false);

    int converse();
    int relate();
    int graph();
    int communities();
    int evaluate();

    // converse -> relate -> graph -> communities -> evaluate, halting on the
    // first failing stage. Evaluation is skipped when no datasets are
    // configured.
    int run_pipeline();

    const RunConfig& config() const { return config_; }
    const ArtifactPaths& paths() const { return paths_; }
    const std::string& digest() const { return digest_; }

private:
    RunConfig config_;
    bool force_;
    bool quiet_;
    std::string digest_;
    ArtifactPaths paths_;
    Seeder seeder_;
    int concurrency_;

    void log(const std::string& message) const;
    void check_manifest() const;
    void record_outputs(const std::string& stage, const std::vector<std::string>& files);
    bool can_skip(const std::vector<std::filesystem::path>& outputs) const;
};

} // namespace lmgraph::cli
