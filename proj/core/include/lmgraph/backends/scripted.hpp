#pragma once

#include "lmgraph/backends/chat.hpp"

namespace lmgraph::backends {

// Replays fixture lines in order. Stateful: instantiate one per conversation.
class ScriptedChatBackend : public ChatBackend {
public:
    explicit ScriptedChatBackend(std::vector<std::string> lines, bool cycle = false,
                                 std::string name = "scripted");

    std::string generate(const std::string& system_prompt,
                         const std::vector<ChatMessage>& history,
                         const GenerationParams& params) override;

    std::size_t consumed() const { return cursor_; }

private:
    std::vector<std::string> lines_;
    bool cycle_;
    std::string name_;
    std::size_t cursor_ = 0;
};

// Reads one fixture line per text line; a trailing newline does not add an
// empty fixture.
std::vector<std::string> load_script_lines(const std::string& path);

} // namespace lmgraph::backends
