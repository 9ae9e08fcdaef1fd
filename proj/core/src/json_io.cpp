#include "lmgraph/json_io.hpp"

#include <fstream>
#include <sstream>

namespace lmgraph {

namespace {

void require_field(const json& j, const char* field, const std::string& what) {
    if (!j.contains(field))
        throw ConfigError(what + ": missing field '" + field + "'");
}

} // namespace

json to_json(const BackendDescriptor& d) {
    json j;
    j["kind"] = to_string(d.kind);
    switch (d.kind) {
        case BackendKind::openai:
            j["base_url"] = d.base_url;
            j["model"] = d.model;
            if (!d.api_key_env.empty()) j["api_key_env"] = d.api_key_env;
            break;
        case BackendKind::scripted:
            if (!d.file.empty())
                j["file"] = d.file;
            else
                j["lines"] = d.lines;
            if (d.cycle) j["cycle"] = true;
            break;
        case BackendKind::synthetic:
            j["topic"] = d.topic;
            j["inertia"] = d.inertia;
            j["noise"] = d.noise;
            break;
    }
    return j;
}

BackendDescriptor backend_descriptor_from_json(const json& j) {
    require_field(j, "kind", "backend descriptor");
    BackendDescriptor d;
    d.kind = backend_kind_from_string(j.at("kind").get<std::string>());
    switch (d.kind) {
        case BackendKind::openai:
            require_field(j, "base_url", "openai backend");
            require_field(j, "model", "openai backend");
            d.base_url = j.at("base_url").get<std::string>();
            d.model = j.at("model").get<std::string>();
            d.api_key_env = j.value("api_key_env", std::string{});
            break;
        case BackendKind::scripted:
            if (j.contains("file"))
                d.file = j.at("file").get<std::string>();
            else if (j.contains("lines"))
                d.lines = j.at("lines").get<std::vector<std::string>>();
            else
                throw ConfigError("scripted backend: need 'lines' or 'file'");
            d.cycle = j.value("cycle", false);
            break;
        case BackendKind::synthetic:
            require_field(j, "topic", "synthetic backend");
            d.topic = j.at("topic").get<std::vector<double>>();
            d.inertia = j.value("inertia", 1.0);
            d.noise = j.value("noise", 0.0);
            if (d.inertia < 0.0 || d.inertia > 1.0)
                throw ConfigError("synthetic backend: inertia must lie in [0,1]");
            if (d.noise < 0.0) throw ConfigError("synthetic backend: noise must be >= 0");
            break;
    }
    return d;
}

json to_json(const ModelRef& m) {
    json j;
    j["id"] = m.id;
    j["backend"] = to_json(m.backend);
    if (m.type_tag) j["type_tag"] = *m.type_tag;
    j["cot_enabled"] = m.cot_enabled;
    return j;
}

ModelRef model_ref_from_json(const json& j) {
    require_field(j, "id", "model record");
    require_field(j, "backend", "model record");
    ModelRef m;
    m.id = j.at("id").get<std::string>();
    m.backend = backend_descriptor_from_json(j.at("backend"));
    if (j.contains("type_tag") && !j.at("type_tag").is_null())
        m.type_tag = j.at("type_tag").get<std::string>();
    m.cot_enabled = j.value("cot_enabled", true);
    return m;
}

json to_json(const ModelRegistry& registry) {
    json j = json::array();
    for (const auto& m : registry.models()) j.push_back(to_json(m));
    return j;
}

ModelRegistry registry_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("registry file must be a JSON array of model records");
    std::vector<ModelRef> models;
    models.reserve(j.size());
    for (const auto& item : j) models.push_back(model_ref_from_json(item));
    return ModelRegistry(std::move(models));
}

ModelRegistry load_registry(const std::filesystem::path& path) {
    return registry_from_json(json::parse(read_text_file(path)));
}

void save_registry(const ModelRegistry& registry, const std::filesystem::path& path) {
    write_text_file(path, to_json(registry).dump(2) + "\n");
}

json to_json(const Conversation& c) {
    json utterances = json::array();
    for (const auto& u : c.utterances)
        utterances.push_back({{"index", u.index}, {"speaker", u.speaker}, {"text", u.text}});
    return json{{"pair", {c.pair.i, c.pair.j}},
                {"run", c.run},
                {"first_speaker", c.first_speaker},
                {"termination", to_string(c.termination)},
                {"utterances", std::move(utterances)}};
}

Conversation conversation_from_json(const json& j) {
    Conversation c;
    require_field(j, "pair", "conversation");
    c.pair = PairKey(j.at("pair").at(0).get<int>(), j.at("pair").at(1).get<int>());
    c.run = j.at("run").get<int>();
    c.first_speaker = j.at("first_speaker").get<std::string>();
    c.termination = termination_from_string(j.at("termination").get<std::string>());
    for (const auto& uj : j.at("utterances")) {
        Utterance u;
        u.index = uj.at("index").get<int>();
        u.speaker = uj.at("speaker").get<std::string>();
        // The reserved PRIMER marker maps back onto the designated first speaker.
        if (u.speaker == "PRIMER") u.speaker = c.first_speaker;
        u.text = uj.at("text").get<std::string>();
        c.utterances.push_back(std::move(u));
    }
    return c;
}

void save_conversations_jsonl(const std::vector<Conversation>& conversations,
                              const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& c : conversations) out << to_json(c).dump() << '\n';
    write_text_file(path, out.str());
}

std::vector<Conversation> load_conversations_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open transcripts file: " + path.string());
    std::vector<Conversation> conversations;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            conversations.push_back(conversation_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ConfigError(path.string() + ": line " + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    return conversations;
}

json to_json(const RelationshipRecord& r) {
    return json{{"pair", {r.pair.i, r.pair.j}},
                {"per_run", r.per_run_values},
                {"value", r.value}};
}

RelationshipRecord relationship_record_from_json(const json& j) {
    RelationshipRecord r;
    r.pair = PairKey(j.at("pair").at(0).get<int>(), j.at("pair").at(1).get<int>());
    r.per_run_values = j.at("per_run").get<std::vector<double>>();
    r.value = j.at("value").get<double>();
    return r;
}

json to_json(const LanguageModelGraph& g) {
    json nodes = json::array();
    for (const auto& m : g.nodes.models()) {
        json node{{"id", m.id}};
        if (m.type_tag) node["type_tag"] = *m.type_tag;
        nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"pair", {e.pair.i, e.pair.j}}, {"weight", e.weight}});
    return json{{"nodes", std::move(nodes)},
                {"edges", std::move(edges)},
                {"tau", g.threshold},
                {"registry", to_json(g.nodes)}};
}

LanguageModelGraph graph_from_json(const json& j) {
    LanguageModelGraph g;
    g.nodes = registry_from_json(j.at("registry"));
    for (const auto& ej : j.at("edges")) {
        GraphEdge e;
        e.pair = PairKey(ej.at("pair").at(0).get<int>(), ej.at("pair").at(1).get<int>());
        e.weight = ej.at("weight").get<double>();
        g.edges.push_back(e);
    }
    g.threshold = j.at("tau").get<double>();
    return g;
}

json partition_to_json(const Partition& p) {
    json communities = json::array();
    for (const auto& members : p.communities()) {
        json entry;
        entry["id"] = static_cast<int>(communities.size());
        entry["members"] = members;
        communities.push_back(std::move(entry));
    }
    json j;
    j["communities"] = std::move(communities);
    j["modularity"] = p.modularity ? json(*p.modularity) : json(nullptr);
    return j;
}

Partition partition_from_json(const json& j) {
    Partition p;
    for (const auto& cj : j.at("communities")) {
        int id = cj.at("id").get<int>();
        for (const auto& member : cj.at("members"))
            p.assignment[member.get<std::string>()] = id;
    }
    if (j.contains("modularity") && !j.at("modularity").is_null())
        p.modularity = j.at("modularity").get<double>();
    return p;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + path.string());
    out << content;
    if (!out) throw ConfigError("write failed: " + path.string());
}

bool write_text_file_if_changed(const std::filesystem::path& path, const std::string& content) {
    if (std::filesystem::exists(path) && read_text_file(path) == content) return false;
    write_text_file(path, content);
    return true;
}

} // namespace lmgraph
