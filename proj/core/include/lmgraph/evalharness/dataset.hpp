#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lmgraph/types.hpp"

namespace lmgraph::evalharness {

enum class QuestionKind { choice, numeric };

std::string to_string(QuestionKind kind);
QuestionKind question_kind_from_string(const std::string& text);

struct Choice {
    std::string label; // single letter A..E
    std::string text;

    bool operator==(const Choice&) const = default;
};

struct QuestionRecord {
    std::string id;
    std::string prompt;
    std::vector<Choice> choices; // empty for NUMERIC
    std::string gold;            // letter for CHOICE, normalized decimal for NUMERIC
    QuestionKind kind = QuestionKind::choice;

    bool operator==(const QuestionRecord&) const = default;
};

struct Dataset {
    std::string name;
    std::vector<QuestionRecord> questions;
};

// JSONL, one question per line: {"id","prompt","choices":[{"label","text"}...]|null,
// "gold","kind"}. Malformed lines raise DatasetError naming line and field.
std::vector<QuestionRecord> load_dataset(const std::filesystem::path& path);

void save_dataset(const std::vector<QuestionRecord>& questions,
                  const std::filesystem::path& path);

} // namespace lmgraph::evalharness
