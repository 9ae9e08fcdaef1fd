#include "lmgraph/evalharness/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lmgraph/evalharness/answers.hpp"

namespace lmgraph::evalharness {

using nlohmann::json;

std::string to_string(QuestionKind kind) {
    return kind == QuestionKind::choice ? "CHOICE" : "NUMERIC";
}

QuestionKind question_kind_from_string(const std::string& text) {
    if (text == "CHOICE") return QuestionKind::choice;
    if (text == "NUMERIC") return QuestionKind::numeric;
    throw ConfigError("unknown question kind: '" + text + "'");
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& field, const std::string& why) {
    throw DatasetError("line " + std::to_string(line) + ": field '" + field + "': " + why);
}

QuestionRecord parse_question(const json& j, std::size_t line) {
    QuestionRecord q;
    for (const char* field : {"id", "prompt", "gold", "kind"})
        if (!j.contains(field)) fail(line, field, "missing");

    q.id = j.at("id").get<std::string>();
    q.prompt = j.at("prompt").get<std::string>();
    q.kind = question_kind_from_string(j.at("kind").get<std::string>());
    q.gold = j.at("gold").get<std::string>();

    if (q.kind == QuestionKind::choice) {
        if (!j.contains("choices") || j.at("choices").is_null())
            fail(line, "choices", "required for CHOICE questions");
        std::set<std::string> labels;
        for (const auto& cj : j.at("choices")) {
            Choice c;
            c.label = cj.at("label").get<std::string>();
            c.text = cj.at("text").get<std::string>();
            if (c.label.size() != 1 || c.label[0] < 'A' || c.label[0] > 'E')
                fail(line, "choices", "label '" + c.label + "' is not one of A..E");
            if (!labels.insert(c.label).second)
                fail(line, "choices", "duplicate label '" + c.label + "'");
            q.choices.push_back(std::move(c));
        }
        if (q.choices.size() < 2 || q.choices.size() > 5)
            fail(line, "choices", "need 2..5 options, got " + std::to_string(q.choices.size()));
        if (!labels.count(q.gold)) fail(line, "gold", "'" + q.gold + "' is not an option label");
    } else {
        auto normalized = normalize_numeric(q.gold);
        if (!normalized) fail(line, "gold", "'" + q.gold + "' is not an exact decimal");
        q.gold = *normalized;
    }
    return q;
}

} // namespace

std::vector<QuestionRecord> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open dataset file: " + path.string());
    std::vector<QuestionRecord> questions;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DatasetError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        try {
            questions.push_back(parse_question(j, line_no));
        } catch (const json::exception& e) {
            throw DatasetError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return questions;
}

void save_dataset(const std::vector<QuestionRecord>& questions,
                  const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& q : questions) {
        json j{{"id", q.id}, {"prompt", q.prompt}, {"gold", q.gold}, {"kind", to_string(q.kind)}};
        if (q.kind == QuestionKind::choice) {
            json choices = json::array();
            for (const auto& c : q.choices)
                choices.push_back({{"label", c.label}, {"text", c.text}});
            j["choices"] = std::move(choices);
        } else {
            j["choices"] = nullptr;
        }
        out << j.dump() << '\n';
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw DatasetError("cannot write dataset file: " + path.string());
    file << out.str();
}

} // namespace lmgraph::evalharness
