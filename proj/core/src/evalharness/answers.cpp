#include "lmgraph/evalharness/answers.hpp"

#include <regex>
#include <sstream>

namespace lmgraph::evalharness {

std::optional<std::string> normalize_numeric(const std::string& text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text)
        if (c != ',' && !std::isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);

    static const std::regex decimal(R"(^([-+]?)(\d*)(?:\.(\d*))?$)");
    std::smatch m;
    if (!std::regex_match(cleaned, m, decimal)) return std::nullopt;

    std::string integer = m[2].str();
    std::string fraction = m[3].str();
    if (integer.empty() && fraction.empty()) return std::nullopt;

    while (integer.size() > 1 && integer.front() == '0') integer.erase(integer.begin());
    if (integer.empty()) integer = "0";
    while (!fraction.empty() && fraction.back() == '0') fraction.pop_back();

    std::string out = integer;
    if (!fraction.empty()) out += "." + fraction;
    bool negative = m[1].str() == "-" && !(integer == "0" && fraction.empty());
    return negative ? "-" + out : out;
}

std::string render_prompt(const QuestionRecord& question, bool cot) {
    std::ostringstream out;
    out << question.prompt << "\n";
    if (question.kind == QuestionKind::choice) {
        out << "\n";
        for (const auto& choice : question.choices)
            out << choice.label << ". " << choice.text << "\n";
        out << "\n";
        if (cot) out << "Think step by step before committing to an option.\n";
        out << "End your response with a line of the form \"Answer: <letter>\" naming one "
               "option letter.\n";
    } else {
        out << "\n";
        if (cot) out << "Think step by step and show your working.\n";
        out << "End your response with a line of the form \"#### <number>\" giving the final "
               "numeric answer.\n";
    }
    return out.str();
}

namespace {

// Last capture of `pattern` in `text`, or nullopt.
std::optional<std::string> last_capture(const std::string& text, const std::regex& pattern) {
    std::optional<std::string> found;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), pattern);
         it != std::sregex_iterator(); ++it)
        found = (*it)[1].str();
    return found;
}

} // namespace

Answer extract_answer(const std::string& raw, QuestionKind kind) {
    try {
        if (kind == QuestionKind::choice) {
            static const std::regex marker(
                R"([Aa][Nn][Ss][Ww][Ee][Rr][Ss]?\s*(?:[Ii][Ss])?\s*[:\-=]?\s*\**\(?([A-E])\)?)");
            if (auto letter = last_capture(raw, marker)) return letter;
            static const std::regex standalone(R"((?:^|[^A-Za-z0-9])([A-E])(?![A-Za-z0-9]))");
            if (auto letter = last_capture(raw, standalone)) return letter;
            return std::nullopt;
        }

        static const std::regex hash_marker(R"(####\s*\$?([-+]?[0-9][0-9,]*(?:\.[0-9]+)?|[-+]?\.[0-9]+))");
        if (auto number = last_capture(raw, hash_marker)) return normalize_numeric(*number);
        static const std::regex number_token(R"(([-+]?(?:[0-9][0-9,]*(?:\.[0-9]+)?|\.[0-9]+)))");
        if (auto number = last_capture(raw, number_token)) return normalize_numeric(*number);
        return std::nullopt;
    } catch (...) {
        return std::nullopt; // extraction is total: any failure is ABSTAIN
    }
}

} // namespace lmgraph::evalharness
