#include "lmgraph/backends/scripted.hpp"

#include <fstream>

namespace lmgraph::backends {

ScriptedChatBackend::ScriptedChatBackend(std::vector<std::string> lines, bool cycle,
                                         std::string name)
    : lines_(std::move(lines)), cycle_(cycle), name_(std::move(name)) {}

std::string ScriptedChatBackend::generate(const std::string& /*system_prompt*/,
                                          const std::vector<ChatMessage>& history,
                                          const GenerationParams& /*params*/) {
    require_chat_history(history);
    if (lines_.empty())
        throw BackendError("scripted backend '" + name_ + "' has no fixture lines");
    if (cursor_ >= lines_.size()) {
        if (!cycle_)
            throw BackendError("scripted backend '" + name_ + "' exhausted its " +
                               std::to_string(lines_.size()) + " fixture lines");
        cursor_ = 0;
    }
    return lines_[cursor_++];
}

std::vector<std::string> load_script_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scripted fixture file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace lmgraph::backends
