#pragma once

#include <optional>
#include <string>

#include "lmgraph/evalharness/dataset.hpp"

namespace lmgraph::evalharness {

// nullopt is ABSTAIN; it always scores as incorrect.
using Answer = std::optional<std::string>;

// Canonical decimal form: commas stripped, sign folded, trailing zeros after
// the decimal point removed. Returns nullopt when the text is not a decimal.
std::optional<std::string> normalize_numeric(const std::string& text);

// Zero-shot prompt. CHOICE: lettered options plus an instruction to end with
// "Answer: <letter>". NUMERIC: an instruction to end with "#### <number>".
// `cot` prepends a step-by-step scaffold.
std::string render_prompt(const QuestionRecord& question, bool cot);

// CoT is forced off for models that opted out.
inline bool effective_cot(const ModelRef& model, bool requested) {
    return requested && model.cot_enabled;
}

// Total extraction: CHOICE takes the last letter following an answer marker,
// else the last standalone A-E token; NUMERIC takes the last "#### x" match,
// else the final number token, normalized. No match is ABSTAIN; never throws.
Answer extract_answer(const std::string& raw, QuestionKind kind);

} // namespace lmgraph::evalharness
