#include "lmgraph/cli/run_config.hpp"

#include <sstream>

#include "lmgraph/backends/hashing.hpp"
#include "lmgraph/backends/openai.hpp"
#include "lmgraph/backends/synthetic.hpp"
#include "lmgraph/json_io.hpp"
#include "lmgraph/seeding.hpp"

namespace lmgraph::cli {

using nlohmann::json;

ConversationConfig default_conversation_config() {
    ConversationConfig config;
    config.system_prompt =
        "Continue the debate, each response should be concise and as negative or critical as "
        "possible, while remaining logically sound. Show evidence of your reasoning and avoid "
        "repeating the same point unless absolutely necessary. If you feel the discussion has "
        "exhausted the available information and if the conversation becomes unclear, "
        "inappropriate, or non-contributive responses, please say 'END DISCUSSION'.";
    config.start_prompt =
        "Let's discuss a topic of your expertise or interest. Can you propose a question or "
        "concept that could spark deep discussions or exploration?";
    config.stop_token = "END DISCUSSION";
    config.max_turns = 5;
    config.runs_per_pair = 5;
    config.sampling.temperature = 0.7;
    config.sampling.max_output_tokens = 512;
    return config;
}

namespace {

relation::ThresholdPolicy threshold_policy_from_json(const json& j) {
    std::string kind = j.value("threshold_policy", std::string("median"));
    if (kind == "median") return relation::ThresholdPolicy::median();
    if (kind == "fixed") {
        if (!j.contains("tau")) throw ConfigError("threshold_policy 'fixed' needs 'tau'");
        return relation::ThresholdPolicy::fixed(j.at("tau").get<double>());
    }
    if (kind == "quantile") {
        if (!j.contains("quantile"))
            throw ConfigError("threshold_policy 'quantile' needs 'quantile'");
        return relation::ThresholdPolicy::at_quantile(j.at("quantile").get<double>());
    }
    throw ConfigError("unknown threshold_policy: '" + kind + "'");
}

json threshold_policy_to_json(const relation::ThresholdPolicy& policy) {
    json j;
    switch (policy.kind) {
        case relation::ThresholdKind::median: j["threshold_policy"] = "median"; break;
        case relation::ThresholdKind::fixed:
            j["threshold_policy"] = "fixed";
            j["tau"] = policy.fixed_value;
            break;
        case relation::ThresholdKind::quantile:
            j["threshold_policy"] = "quantile";
            j["quantile"] = policy.quantile;
            break;
    }
    return j;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& path) {
    return path.is_absolute() ? path : base / path;
}

} // namespace

RunConfig RunConfig::load(const std::filesystem::path& path) {
    json j = json::parse(read_text_file(path));
    std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";

    RunConfig config;
    config.conversation = default_conversation_config();

    if (!j.contains("registry")) throw ConfigError(path.string() + ": missing 'registry'");
    config.registry_path = resolve(base, j.at("registry").get<std::string>());

    if (!j.contains("master_seed"))
        throw ConfigError(path.string() + ": missing 'master_seed' (mandatory)");
    config.conversation.master_seed = j.at("master_seed").get<std::uint64_t>();

    if (j.contains("conversation")) {
        const json& c = j.at("conversation");
        auto& conv = config.conversation;
        conv.system_prompt = c.value("system_prompt", conv.system_prompt);
        conv.start_prompt = c.value("start_prompt", conv.start_prompt);
        conv.stop_token = c.value("stop_token", conv.stop_token);
        conv.max_turns = c.value("max_turns", conv.max_turns);
        conv.runs_per_pair = c.value("runs_per_pair", conv.runs_per_pair);
        conv.sampling.temperature = c.value("temperature", conv.sampling.temperature);
        conv.sampling.max_output_tokens =
            c.value("max_output_tokens", conv.sampling.max_output_tokens);
    }

    if (j.contains("embedder")) {
        const json& e = j.at("embedder");
        config.embedder.kind = e.value("kind", config.embedder.kind);
        config.embedder.dimension = e.value("dimension", config.embedder.dimension);
        config.embedder.base_url = e.value("base_url", std::string{});
        config.embedder.model = e.value("model", std::string{});
        config.embedder.instruction_prefix = e.value("instruction_prefix", std::string{});
        config.embedder.api_key_env = e.value("api_key_env", std::string{});
    }

    if (j.contains("relation")) {
        const json& r = j.at("relation");
        config.relation.policy = threshold_policy_from_json(r);
        config.relation.include_primer_turn =
            r.value("include_primer_turn", config.relation.include_primer_turn);
        config.relation.embedding_cache =
            r.value("embedding_cache", config.relation.embedding_cache);
    }

    if (j.contains("community"))
        config.community.resolution =
            j.at("community").value("resolution", config.community.resolution);

    if (j.contains("evaluation")) {
        const json& e = j.at("evaluation");
        for (const auto& d : e.value("datasets", std::vector<std::string>{}))
            config.evaluation.datasets.push_back(resolve(base, d));
        config.evaluation.trials = e.value("trials", config.evaluation.trials);
        config.evaluation.random_team_size =
            e.value("random_team_size", config.evaluation.random_team_size);
        config.evaluation.random_team_count =
            e.value("random_team_count", config.evaluation.random_team_count);
        if (e.contains("self_consistency_model") && !e.at("self_consistency_model").is_null())
            config.evaluation.self_consistency_model =
                e.at("self_consistency_model").get<std::string>();
        config.evaluation.self_consistency_n =
            e.value("self_consistency_n", config.evaluation.self_consistency_n);
        config.evaluation.use_cot = e.value("use_cot", config.evaluation.use_cot);
    }

    config.concurrency = j.value("concurrency", 0);
    config.out_dir = resolve(base, j.value("out_dir", std::string("out")));

    config.validate();
    return config;
}

void RunConfig::validate() const {
    conversation.validate();
    if (!std::filesystem::exists(registry_path))
        throw ConfigError("registry file does not exist: " + registry_path.string());
    for (const auto& dataset : evaluation.datasets)
        if (!std::filesystem::exists(dataset))
            throw ConfigError("dataset file does not exist: " + dataset.string());
    if (embedder.kind != "decoding" && embedder.kind != "hashing" && embedder.kind != "openai")
        throw ConfigError("unknown embedder kind: '" + embedder.kind + "'");
    if (embedder.kind == "openai" && embedder.base_url.empty())
        throw ConfigError("openai embedder needs 'base_url'");
    if (evaluation.trials < 1) throw ConfigError("evaluation trials must be >= 1");
}

json RunConfig::to_json() const {
    json j;
    j["registry"] = registry_path.string();
    j["master_seed"] = conversation.master_seed;
    j["conversation"] = {{"system_prompt", conversation.system_prompt},
                         {"start_prompt", conversation.start_prompt},
                         {"stop_token", conversation.stop_token},
                         {"max_turns", conversation.max_turns},
                         {"runs_per_pair", conversation.runs_per_pair},
                         {"temperature", conversation.sampling.temperature},
                         {"max_output_tokens", conversation.sampling.max_output_tokens}};
    j["embedder"] = {{"kind", embedder.kind},
                     {"dimension", embedder.dimension},
                     {"base_url", embedder.base_url},
                     {"model", embedder.model},
                     {"instruction_prefix", embedder.instruction_prefix},
                     {"api_key_env", embedder.api_key_env}};
    j["relation"] = threshold_policy_to_json(relation.policy);
    j["relation"]["include_primer_turn"] = relation.include_primer_turn;
    j["relation"]["embedding_cache"] = relation.embedding_cache;
    j["community"] = {{"resolution", community.resolution}};
    json datasets = json::array();
    for (const auto& d : evaluation.datasets) datasets.push_back(d.string());
    j["evaluation"] = {
        {"datasets", std::move(datasets)},
        {"trials", evaluation.trials},
        {"random_team_size", evaluation.random_team_size},
        {"random_team_count", evaluation.random_team_count},
        {"self_consistency_model", evaluation.self_consistency_model
                                       ? json(*evaluation.self_consistency_model)
                                       : json(nullptr)},
        {"self_consistency_n", evaluation.self_consistency_n},
        {"use_cot", evaluation.use_cot}};
    j["concurrency"] = concurrency;
    j["out_dir"] = out_dir.string();
    return j;
}

std::string RunConfig::digest() const {
    json j = to_json();
    // Location- and schedule-independent: drop paths and concurrency, fold in
    // the referenced file contents instead.
    j.erase("concurrency");
    j.erase("out_dir");
    j.erase("registry");
    j["registry_content"] = fnv1a64(read_text_file(registry_path));
    json dataset_hashes = json::array();
    for (const auto& d : evaluation.datasets) dataset_hashes.push_back(fnv1a64(read_text_file(d)));
    j["evaluation"]["datasets"] = std::move(dataset_hashes);

    std::uint64_t h = fnv1a64(j.dump());
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::unique_ptr<backends::Embedder> make_embedder(const EmbedderConfig& config) {
    if (config.kind == "decoding")
        return std::make_unique<backends::DecodingEmbedder>(config.dimension);
    if (config.kind == "hashing")
        return std::make_unique<backends::HashingEmbedder>(config.dimension);
    if (config.kind == "openai")
        return std::make_unique<backends::OpenAiEmbedder>(
            config.base_url, config.model, config.instruction_prefix, config.api_key_env);
    throw ConfigError("unknown embedder kind: '" + config.kind + "'");
}

} // namespace lmgraph::cli
