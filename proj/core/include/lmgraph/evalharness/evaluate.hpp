#pragma once

#include <nlohmann/json.hpp>

#include "lmgraph/backends/chat.hpp"
#include "lmgraph/evalharness/answers.hpp"
#include "lmgraph/evalharness/teams.hpp"

namespace lmgraph::evalharness {

// ABSTAINs removed, plurality winner returned; ties broken uniformly at
// random over the sorted candidate set with the given seed. All-ABSTAIN stays
// ABSTAIN (scored incorrect).
Answer majority_vote(const std::vector<Answer>& answers, std::uint64_t seed);

// n samples from one chat handle under distinct derived seeds, answers
// extracted and majority-voted. Failed samples are dropped; all dropped is
// ABSTAIN. seed_scope isolates the derivation per (dataset, trial, question).
Answer self_consistency(backends::ChatBackend& chat, const ModelRef& model,
                        const QuestionRecord& question, int n, const Seeder& seeder,
                        const std::string& seed_scope, const SamplingParams& sampling,
                        bool use_cot);

struct EvalOptions {
    int trials = 5;
    bool use_cot = true;
    SamplingParams sampling;
    int concurrency = 1;
};

struct TeamDatasetResult {
    std::string team;
    std::string dataset;
    std::vector<double> trial_accuracies;
    double mean = 0.0;
    double stddev = 0.0; // population standard deviation over trials
    bool failed = false;
    std::string error;
};

struct EvalReport {
    std::vector<TeamDatasetResult> rows; // random teams merged into one Random@k row
    nlohmann::json metadata;
};

// Every member answers every question once per (team, dataset, trial) with
// fresh derived seeds; the team answer follows the team protocol; accuracy is
// correct/total with ABSTAIN counted incorrect. Random teams are evaluated
// individually and averaged into a single Random@k row, with the sampled
// memberships recorded in metadata.
EvalReport evaluate(const std::vector<TeamSpec>& teams, const std::vector<Dataset>& datasets,
                    const ModelRegistry& registry, const backends::BackendProvider& provider,
                    const EvalOptions& options, const Seeder& seeder);

nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);

// Mean +/- std table, one row per team, one column per dataset, values in
// percent.
std::string report_to_markdown(const EvalReport& report);

} // namespace lmgraph::evalharness
