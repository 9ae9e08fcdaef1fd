#include "lmgraph/cli/stages.hpp"

#include <cstdio>

#include "lmgraph/community/community.hpp"
#include "lmgraph/dialogue/runner.hpp"
#include "lmgraph/evalharness/evaluate.hpp"
#include "lmgraph/json_io.hpp"
#include "lmgraph/parallel.hpp"
#include "lmgraph/relation/export.hpp"

namespace lmgraph::cli {

using nlohmann::json;

PipelineRunner::PipelineRunner(RunConfig config, bool force, bool quiet)
    : config_(std::move(config)),
      force_(force),
      quiet_(quiet),
      digest_(config_.digest()),
      paths_{config_.out_dir},
      seeder_(config_.conversation.master_seed),
      concurrency_(config_.concurrency > 0 ? config_.concurrency : default_concurrency()) {
    config_.validate();
    std::filesystem::create_directories(paths_.out);
}

void PipelineRunner::log(const std::string& message) const {
    if (!quiet_) std::fprintf(stderr, "%s\n", message.c_str());
}

void PipelineRunner::check_manifest() const {
    if (!std::filesystem::exists(paths_.manifest())) return;
    json manifest = json::parse(read_text_file(paths_.manifest()));
    std::string existing = manifest.value("config_digest", std::string{});
    if (existing != digest_ && !force_)
        throw ConfigError("run directory " + paths_.out.string() +
                          " holds artifacts for config digest " + existing +
                          " but the current config digests to " + digest_ +
                          "; use --force or a fresh --out directory");
}

void PipelineRunner::record_outputs(const std::string& stage,
                                    const std::vector<std::string>& files) {
    json manifest;
    if (std::filesystem::exists(paths_.manifest())) {
        manifest = json::parse(read_text_file(paths_.manifest()));
        if (manifest.value("config_digest", std::string{}) != digest_)
            manifest["stages"] = json::object(); // forced regeneration under a new config
    }
    manifest["config_digest"] = digest_;
    manifest["stages"][stage] = files;
    write_text_file_if_changed(paths_.manifest(), manifest.dump(2) + "\n");
}

bool PipelineRunner::can_skip(const std::vector<std::filesystem::path>& outputs) const {
    if (force_) return false;
    if (!std::filesystem::exists(paths_.manifest())) return false;
    json manifest = json::parse(read_text_file(paths_.manifest()));
    if (manifest.value("config_digest", std::string{}) != digest_) return false;
    for (const auto& path : outputs)
        if (!std::filesystem::exists(path)) return false;
    return true;
}

int PipelineRunner::converse() {
    check_manifest();
    if (can_skip({paths_.conversations()})) {
        log("converse: outputs exist, skipping (use --force to regenerate)");
        return 0;
    }

    ModelRegistry registry = load_registry(config_.registry_path);
    std::size_t pair_count = enumerate_pairs(registry).size();
    log("converse: " + std::to_string(pair_count) + " pairs x " +
        std::to_string(config_.conversation.runs_per_pair) + " runs");

    backends::StandardBackendProvider provider(registry);
    std::vector<Conversation> conversations = dialogue::run_all_pairs(
        registry, config_.conversation, provider, seeder_, concurrency_);
    save_conversations_jsonl(conversations, paths_.conversations());
    record_outputs("converse", {"conversations.jsonl"});

    int failures = 0;
    for (const auto& conversation : conversations)
        if (conversation.termination == Termination::backend_error) ++failures;
    if (failures > 0)
        log("converse: " + std::to_string(failures) + " of " +
            std::to_string(conversations.size()) + " pair-runs ended in BACKEND_ERROR");
    else
        log("converse: wrote " + std::to_string(conversations.size()) + " conversations");
    return failures;
}

int PipelineRunner::relate() {
    check_manifest();
    if (can_skip({paths_.relationships()})) {
        log("relate: outputs exist, skipping");
        return 0;
    }
    if (!std::filesystem::exists(paths_.conversations()))
        throw ConfigError("relate: expected transcripts at " + paths_.conversations().string() +
                          "; run the converse stage first");

    std::vector<Conversation> conversations = load_conversations_jsonl(paths_.conversations());
    auto embedder = make_embedder(config_.embedder);
    relation::EmbeddingCache cache(*embedder, config_.relation.embedding_cache);
    relation::RelationshipSet set = relation::compute_relationships(
        conversations, cache, config_.relation.include_primer_turn, concurrency_);

    std::vector<double> values;
    for (const auto& record : set.records) values.push_back(record.value);
    double tau = relation::compute_threshold(values, config_.relation.policy);

    json j;
    json pairs = json::array();
    for (const auto& record : set.records) pairs.push_back(to_json(record));
    j["pairs"] = std::move(pairs);
    json missing = json::array();
    for (const auto& pair : set.missing_pairs) missing.push_back({pair.i, pair.j});
    j["missing_pairs"] = std::move(missing);
    switch (config_.relation.policy.kind) {
        case relation::ThresholdKind::median: j["threshold_policy"] = "median"; break;
        case relation::ThresholdKind::fixed: j["threshold_policy"] = "fixed"; break;
        case relation::ThresholdKind::quantile: j["threshold_policy"] = "quantile"; break;
    }
    j["tau"] = tau;
    j["config_digest"] = digest_;
    write_text_file(paths_.relationships(), j.dump(2) + "\n");
    record_outputs("relate", {"relationships.json"});
    log("relate: " + std::to_string(set.records.size()) + " pairs, tau = " +
        std::to_string(tau));
    return 0;
}

int PipelineRunner::graph() {
    check_manifest();
    if (can_skip({paths_.graph_json(), paths_.graph_graphml(), paths_.graph_dot()})) {
        log("graph: outputs exist, skipping");
        return 0;
    }
    if (!std::filesystem::exists(paths_.relationships()))
        throw ConfigError("graph: expected relationships at " + paths_.relationships().string() +
                          "; run the relate stage first");

    ModelRegistry registry = load_registry(config_.registry_path);
    json r = json::parse(read_text_file(paths_.relationships()));
    std::vector<RelationshipRecord> records;
    for (const auto& rj : r.at("pairs")) records.push_back(relationship_record_from_json(rj));
    double tau = r.at("tau").get<double>();

    LanguageModelGraph graph = relation::build_graph(registry, records, tau);
    json gj = to_json(graph);
    gj["config_digest"] = digest_;
    write_text_file(paths_.graph_json(), gj.dump(2) + "\n");
    write_text_file(paths_.graph_graphml(), relation::to_graphml(graph));
    write_text_file(paths_.graph_dot(), relation::to_dot(graph));
    record_outputs("graph", {"graph.json", "graph.graphml", "graph.dot"});
    log("graph: " + std::to_string(graph.edges.size()) + " edges at tau = " +
        std::to_string(tau));
    return 0;
}

int PipelineRunner::communities() {
    check_manifest();
    if (can_skip({paths_.partition()})) {
        log("communities: outputs exist, skipping");
        return 0;
    }
    if (!std::filesystem::exists(paths_.graph_json()))
        throw ConfigError("communities: expected graph at " + paths_.graph_json().string() +
                          "; run the graph stage first");

    LanguageModelGraph graph = graph_from_json(json::parse(read_text_file(paths_.graph_json())));
    community::LouvainOptions options;
    options.resolution = config_.community.resolution;
    Partition partition = community::louvain(graph, seeder_, options);

    json pj = partition_to_json(partition);
    pj["resolution"] = config_.community.resolution;
    pj["seed"] = config_.conversation.master_seed;
    pj["config_digest"] = digest_;
    write_text_file(paths_.partition(), pj.dump(2) + "\n");
    record_outputs("communities", {"partition.json"});
    log("communities: " + std::to_string(partition.community_count()) + " communities, Q = " +
        std::to_string(partition.modularity.value_or(0.0)));
    return 0;
}

int PipelineRunner::evaluate() {
    check_manifest();
    if (can_skip({paths_.report_json(), paths_.report_md()})) {
        log("evaluate: outputs exist, skipping");
        return 0;
    }
    if (config_.evaluation.datasets.empty())
        throw ConfigError("evaluate: no datasets configured");

    ModelRegistry registry = load_registry(config_.registry_path);

    std::optional<Partition> partition;
    if (std::filesystem::exists(paths_.partition()))
        partition = partition_from_json(json::parse(read_text_file(paths_.partition())));

    evalharness::BaselineTeamOptions team_options;
    team_options.random_team_size = config_.evaluation.random_team_size;
    team_options.random_team_count = config_.evaluation.random_team_count;
    team_options.self_consistency_model = config_.evaluation.self_consistency_model;
    team_options.self_consistency_n = config_.evaluation.self_consistency_n;
    std::vector<evalharness::TeamSpec> teams =
        evalharness::build_baseline_teams(registry, partition, team_options, seeder_);

    std::vector<evalharness::Dataset> datasets;
    for (const auto& path : config_.evaluation.datasets)
        datasets.push_back({path.stem().string(), evalharness::load_dataset(path)});

    evalharness::EvalOptions options;
    options.trials = config_.evaluation.trials;
    options.use_cot = config_.evaluation.use_cot;
    options.sampling = config_.conversation.sampling;
    options.concurrency = concurrency_;

    backends::StandardBackendProvider provider(registry);
    evalharness::EvalReport report =
        evalharness::evaluate(teams, datasets, registry, provider, options, seeder_);
    report.metadata["config_digest"] = digest_;

    json rj = evalharness::report_to_json(report);
    write_text_file(paths_.report_json(), rj.dump(2) + "\n");
    write_text_file(paths_.report_md(), evalharness::report_to_markdown(report));
    record_outputs("evaluate", {"report.json", "report.md"});

    int failed = 0;
    for (const auto& row : report.rows)
        if (row.failed) ++failed;
    log("evaluate: " + std::to_string(report.rows.size()) + " rows, " + std::to_string(failed) +
        " failed");
    return failed == static_cast<int>(report.rows.size()) && failed > 0 ? failed : 0;
}

int PipelineRunner::run_pipeline() {
    if (int failures = converse(); failures > 0) return failures;
    if (int failures = relate(); failures > 0) return failures;
    if (int failures = graph(); failures > 0) return failures;
    if (int failures = communities(); failures > 0) return failures;
    if (config_.evaluation.datasets.empty()) {
        log("pipeline: no datasets configured, skipping evaluation");
        return 0;
    }
    return evaluate();
}

} // namespace lmgraph::cli
