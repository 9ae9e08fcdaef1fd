#include "lmgraph/cli/synth.hpp"

#include "lmgraph/evalharness/dataset.hpp"
#include "lmgraph/json_io.hpp"

namespace lmgraph::cli {

using nlohmann::json;

namespace {

// A tiny fixed CHOICE set so the evaluate stage has something to chew on in
// synthetic end-to-end runs.
std::vector<evalharness::QuestionRecord> smoke_dataset() {
    using evalharness::Choice;
    using evalharness::QuestionKind;
    using evalharness::QuestionRecord;
    auto choice = [](std::string id, std::string prompt, std::vector<Choice> choices,
                     std::string gold) {
        QuestionRecord q;
        q.id = std::move(id);
        q.prompt = std::move(prompt);
        q.choices = std::move(choices);
        q.gold = std::move(gold);
        q.kind = QuestionKind::choice;
        return q;
    };
    return {
        choice("q1", "Which vector has unit length?",
               {{"A", "(1, 0)"}, {"B", "(2, 0)"}, {"C", "(0, 3)"}, {"D", "(1, 1)"}}, "A"),
        choice("q2", "What is the cosine of a right angle?",
               {{"A", "1"}, {"B", "0.5"}, {"C", "0"}, {"D", "-1"}}, "C"),
        choice("q3", "How many unordered pairs does a set of four elements have?",
               {{"A", "4"}, {"B", "6"}, {"C", "8"}, {"D", "12"}}, "B"),
        choice("q4", "Which quantity is maximized by community detection here?",
               {{"A", "diameter"}, {"B", "girth"}, {"C", "modularity"}, {"D", "degree"}}, "C"),
    };
}

} // namespace

RunConfig scenario_run_config(const synthlab::Scenario& scenario,
                              const synthlab::ScenarioSpec& spec,
                              const std::filesystem::path& directory) {
    RunConfig config;
    config.registry_path = directory / "registry.json";
    config.conversation = default_conversation_config();
    config.conversation.start_prompt = scenario.start_prompt;
    config.conversation.master_seed = spec.seed;
    config.embedder.kind = "decoding";
    config.embedder.dimension = scenario.embedding_dimension;
    config.evaluation.datasets = {directory / "scenario-eval.jsonl"};
    config.evaluation.trials = 5;
    config.out_dir = directory / "out";
    return config;
}

SynthOutputs emit_scenario(const synthlab::ScenarioSpec& spec,
                           const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);
    synthlab::Scenario scenario = synthlab::generate_scenario(spec);

    SynthOutputs outputs;
    outputs.registry = directory / "registry.json";
    outputs.planted = directory / "planted.json";
    outputs.config = directory / "config.json";
    outputs.dataset = directory / "scenario-eval.jsonl";

    save_registry(scenario.registry, outputs.registry);

    json planted = partition_to_json(scenario.planted);
    planted["scenario"] = to_json(spec);
    write_text_file(outputs.planted, planted.dump(2) + "\n");

    evalharness::save_dataset(smoke_dataset(), outputs.dataset);

    RunConfig config = scenario_run_config(scenario, spec, directory);
    json cj = config.to_json();
    // Keep the emitted config portable: paths relative to its own directory.
    cj["registry"] = "registry.json";
    cj["evaluation"]["datasets"] = json::array({"scenario-eval.jsonl"});
    cj["out_dir"] = "out";
    write_text_file(outputs.config, cj.dump(2) + "\n");
    return outputs;
}

} // namespace lmgraph::cli
