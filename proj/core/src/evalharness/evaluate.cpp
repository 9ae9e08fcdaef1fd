#include "lmgraph/evalharness/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "lmgraph/parallel.hpp"

namespace lmgraph::evalharness {

using backends::ChatMessage;
using backends::GenerationParams;
using backends::Role;
using nlohmann::json;

Answer majority_vote(const std::vector<Answer>& answers, std::uint64_t seed) {
    if (answers.empty()) throw DomainError("majority vote over an empty answer list");
    std::map<std::string, int> counts; // sorted keys make the tie-break order-invariant
    for (const auto& answer : answers)
        if (answer) ++counts[*answer];
    if (counts.empty()) return std::nullopt;

    int best = 0;
    for (const auto& [answer, count] : counts) best = std::max(best, count);
    std::vector<std::string> tied;
    for (const auto& [answer, count] : counts)
        if (count == best) tied.push_back(answer);
    if (tied.size() == 1) return tied.front();
    SplitMix64 rng(seed);
    return tied[static_cast<std::size_t>(rng.next_below(tied.size()))];
}

namespace {

GenerationParams make_params(const SamplingParams& sampling, std::uint64_t seed) {
    GenerationParams params;
    // Self-consistency and trial averaging assume non-degenerate sampling.
    params.temperature = sampling.temperature > 0.0 ? sampling.temperature : 0.7;
    params.max_output_tokens = sampling.max_output_tokens;
    params.seed = seed;
    return params;
}

Answer ask_once(backends::ChatBackend& chat, const ModelRef& model,
                const QuestionRecord& question, const SamplingParams& sampling, bool use_cot,
                std::uint64_t seed) {
    std::string prompt = render_prompt(question, effective_cot(model, use_cot));
    std::vector<ChatMessage> history{{Role::user, prompt}};
    std::string raw = chat.generate("", history, make_params(sampling, seed));
    return extract_answer(raw, question.kind);
}

} // namespace

Answer self_consistency(backends::ChatBackend& chat, const ModelRef& model,
                        const QuestionRecord& question, int n, const Seeder& seeder,
                        const std::string& seed_scope, const SamplingParams& sampling,
                        bool use_cot) {
    if (n < 1) throw ConfigError("self-consistency requires n >= 1");
    std::vector<Answer> answers;
    for (int sample = 0; sample < n; ++sample) {
        std::uint64_t seed = seeder.derive(seed_scope + ":sample=" + std::to_string(sample));
        try {
            answers.push_back(ask_once(chat, model, question, sampling, use_cot, seed));
        } catch (const BackendError& e) {
            std::fprintf(stderr, "warning: self-consistency sample %d for '%s' dropped: %s\n",
                         sample, model.id.c_str(), e.what());
        }
    }
    if (answers.empty()) return std::nullopt;
    return majority_vote(answers, seeder.derive(seed_scope + ":vote"));
}

namespace {

struct TrialOutcome {
    double accuracy = 0.0;
    bool failed = false;
    std::string error;
};

TrialOutcome run_trial(const TeamSpec& team, const Dataset& dataset,
                       const ModelRegistry& registry,
                       const backends::BackendProvider& provider, const EvalOptions& options,
                       const Seeder& seeder, int trial) {
    TrialOutcome outcome;
    std::vector<const ModelRef*> members;
    std::vector<std::unique_ptr<backends::ChatBackend>> chats;
    try {
        for (const auto& id : team.members) {
            members.push_back(&registry.at(registry.index_of(id)));
            chats.push_back(provider.make_chat(*members.back()));
        }
    } catch (const Error& e) {
        outcome.failed = true;
        outcome.error = e.what();
        return outcome;
    }

    std::string scope_base =
        "eval:dataset=" + dataset.name + ":trial=" + std::to_string(trial);
    int correct = 0;
    for (const auto& question : dataset.questions) {
        std::string scope = scope_base + ":question=" + question.id;
        Answer team_answer;
        if (team.protocol == TeamProtocol::self_consistency) {
            team_answer = self_consistency(*chats[0], *members[0], question,
                                           team.self_consistency_n, seeder,
                                           scope + ":model=" + members[0]->id, options.sampling,
                                           options.use_cot);
        } else {
            std::vector<Answer> answers;
            for (std::size_t m = 0; m < members.size(); ++m) {
                std::uint64_t seed = seeder.derive(scope + ":model=" + members[m]->id);
                try {
                    answers.push_back(ask_once(*chats[m], *members[m], question,
                                               options.sampling, options.use_cot, seed));
                } catch (const BackendError& e) {
                    std::fprintf(stderr, "warning: '%s' failed on %s/%s: %s\n",
                                 members[m]->id.c_str(), dataset.name.c_str(),
                                 question.id.c_str(), e.what());
                    answers.push_back(std::nullopt);
                }
            }
            team_answer = majority_vote(answers, seeder.derive(scope + ":vote"));
        }
        if (team_answer && *team_answer == question.gold) ++correct;
    }
    outcome.accuracy = dataset.questions.empty()
                           ? 0.0
                           : static_cast<double>(correct) /
                                 static_cast<double>(dataset.questions.size());
    return outcome;
}

void finalize_row(TeamDatasetResult& row) {
    if (row.failed || row.trial_accuracies.empty()) return;
    double sum = 0.0;
    for (double a : row.trial_accuracies) sum += a;
    row.mean = sum / static_cast<double>(row.trial_accuracies.size());
    double variance = 0.0;
    for (double a : row.trial_accuracies) variance += (a - row.mean) * (a - row.mean);
    row.stddev = std::sqrt(variance / static_cast<double>(row.trial_accuracies.size()));
}

} // namespace

EvalReport evaluate(const std::vector<TeamSpec>& teams, const std::vector<Dataset>& datasets,
                    const ModelRegistry& registry, const backends::BackendProvider& provider,
                    const EvalOptions& options, const Seeder& seeder) {
    if (options.trials < 1) throw ConfigError("evaluation requires trials >= 1");
    for (const auto& team : teams) team.validate();

    struct Task {
        std::size_t team_index;
        std::size_t dataset_index;
        int trial;
    };
    std::vector<Task> tasks;
    for (std::size_t t = 0; t < teams.size(); ++t)
        for (std::size_t d = 0; d < datasets.size(); ++d)
            for (int trial = 0; trial < options.trials; ++trial) tasks.push_back({t, d, trial});

    std::vector<TrialOutcome> outcomes(tasks.size());
    parallel_for(tasks.size(), options.concurrency, [&](std::size_t k) {
        const Task& task = tasks[k];
        outcomes[k] = run_trial(teams[task.team_index], datasets[task.dataset_index], registry,
                                provider, options, seeder, task.trial);
    });

    // Assemble rows; random teams fold into one Random@k row per dataset.
    auto outcome_at = [&](std::size_t team, std::size_t dataset, int trial) -> const TrialOutcome& {
        std::size_t index =
            (team * datasets.size() + dataset) * static_cast<std::size_t>(options.trials) +
            static_cast<std::size_t>(trial);
        return outcomes[index];
    };

    EvalReport report;
    std::vector<std::size_t> random_teams;
    for (std::size_t t = 0; t < teams.size(); ++t)
        if (teams[t].is_random) random_teams.push_back(t);

    json random_detail = json::array();
    int random_size = 0;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        for (std::size_t t = 0; t < teams.size(); ++t) {
            if (teams[t].is_random) continue;
            TeamDatasetResult row;
            row.team = teams[t].name;
            row.dataset = datasets[d].name;
            for (int trial = 0; trial < options.trials; ++trial) {
                const TrialOutcome& outcome = outcome_at(t, d, trial);
                if (outcome.failed) {
                    row.failed = true;
                    row.error = outcome.error;
                    break;
                }
                row.trial_accuracies.push_back(outcome.accuracy);
            }
            finalize_row(row);
            report.rows.push_back(std::move(row));
        }

        if (!random_teams.empty()) {
            TeamDatasetResult row;
            random_size = static_cast<int>(teams[random_teams.front()].members.size());
            row.team = "random@" + std::to_string(random_size);
            row.dataset = datasets[d].name;
            for (int trial = 0; trial < options.trials; ++trial) {
                double sum = 0.0;
                bool failed = false;
                for (std::size_t t : random_teams) {
                    const TrialOutcome& outcome = outcome_at(t, d, trial);
                    if (outcome.failed) {
                        row.failed = true;
                        row.error = outcome.error;
                        failed = true;
                        break;
                    }
                    sum += outcome.accuracy;
                }
                if (failed) break;
                row.trial_accuracies.push_back(sum / static_cast<double>(random_teams.size()));
            }
            finalize_row(row);

            for (std::size_t t : random_teams) {
                json entry{{"team", teams[t].name},
                           {"dataset", datasets[d].name},
                           {"members", teams[t].members}};
                json trials = json::array();
                for (int trial = 0; trial < options.trials; ++trial) {
                    const TrialOutcome& outcome = outcome_at(t, d, trial);
                    trials.push_back(outcome.failed ? json(nullptr) : json(outcome.accuracy));
                }
                entry["trial_accuracies"] = std::move(trials);
                random_detail.push_back(std::move(entry));
            }
            report.rows.push_back(std::move(row));
        }
    }

    report.metadata["master_seed"] = seeder.master();
    report.metadata["trials"] = options.trials;
    report.metadata["use_cot"] = options.use_cot;
    json team_specs = json::array();
    for (const auto& team : teams) {
        team_specs.push_back({{"name", team.name},
                              {"members", team.members},
                              {"protocol", to_string(team.protocol)},
                              {"self_consistency_n", team.self_consistency_n},
                              {"is_random", team.is_random}});
    }
    report.metadata["teams"] = std::move(team_specs);
    if (!random_detail.empty()) {
        report.metadata["random_team_rows"] = std::move(random_detail);
        report.metadata["random_team_size"] = random_size;
    }
    return report;
}

json report_to_json(const EvalReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r{{"team", row.team}, {"dataset", row.dataset}};
        if (row.failed) {
            r["failed"] = true;
            r["error"] = row.error;
        } else {
            r["trial_accuracies"] = row.trial_accuracies;
            r["mean"] = row.mean;
            r["stddev"] = row.stddev;
        }
        rows.push_back(std::move(r));
    }
    return json{{"rows", std::move(rows)}, {"metadata", report.metadata}};
}

EvalReport report_from_json(const json& j) {
    EvalReport report;
    for (const auto& rj : j.at("rows")) {
        TeamDatasetResult row;
        row.team = rj.at("team").get<std::string>();
        row.dataset = rj.at("dataset").get<std::string>();
        if (rj.value("failed", false)) {
            row.failed = true;
            row.error = rj.value("error", std::string{});
        } else {
            row.trial_accuracies = rj.at("trial_accuracies").get<std::vector<double>>();
            row.mean = rj.at("mean").get<double>();
            row.stddev = rj.at("stddev").get<double>();
        }
        report.rows.push_back(std::move(row));
    }
    report.metadata = j.value("metadata", json::object());
    return report;
}

std::string report_to_markdown(const EvalReport& report) {
    std::vector<std::string> team_order;
    std::vector<std::string> dataset_order;
    std::map<std::pair<std::string, std::string>, const TeamDatasetResult*> cells;
    for (const auto& row : report.rows) {
        if (std::find(team_order.begin(), team_order.end(), row.team) == team_order.end())
            team_order.push_back(row.team);
        if (std::find(dataset_order.begin(), dataset_order.end(), row.dataset) ==
            dataset_order.end())
            dataset_order.push_back(row.dataset);
        cells[{row.team, row.dataset}] = &row;
    }

    std::ostringstream out;
    out << "| Model Group |";
    for (const auto& dataset : dataset_order) out << " " << dataset << " |";
    out << "\n|---|";
    for (std::size_t k = 0; k < dataset_order.size(); ++k) out << "---|";
    out << "\n";
    out.setf(std::ios::fixed);
    out.precision(1);
    for (const auto& team : team_order) {
        out << "| " << team << " |";
        for (const auto& dataset : dataset_order) {
            auto it = cells.find({team, dataset});
            if (it == cells.end()) {
                out << " - |";
            } else if (it->second->failed) {
                out << " failed |";
            } else {
                out << " " << it->second->mean * 100.0 << " ± " << it->second->stddev * 100.0
                    << " |";
            }
        }
        out << "\n";
    }
    return out.str();
}

} // namespace lmgraph::evalharness
