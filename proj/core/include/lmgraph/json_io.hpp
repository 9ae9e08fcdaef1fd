#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lmgraph/types.hpp"

namespace lmgraph {

using json = nlohmann::json;

json to_json(const BackendDescriptor& descriptor);
BackendDescriptor backend_descriptor_from_json(const json& j);

json to_json(const ModelRef& model);
ModelRef model_ref_from_json(const json& j);

json to_json(const ModelRegistry& registry);
ModelRegistry registry_from_json(const json& j);
ModelRegistry load_registry(const std::filesystem::path& path);
void save_registry(const ModelRegistry& registry, const std::filesystem::path& path);

json to_json(const Conversation& conversation);
Conversation conversation_from_json(const json& j);

// JSONL, one conversation per line.
void save_conversations_jsonl(const std::vector<Conversation>& conversations,
                              const std::filesystem::path& path);
std::vector<Conversation> load_conversations_jsonl(const std::filesystem::path& path);

json to_json(const RelationshipRecord& record);
RelationshipRecord relationship_record_from_json(const json& j);

json to_json(const LanguageModelGraph& graph);
LanguageModelGraph graph_from_json(const json& j);

json partition_to_json(const Partition& partition);
Partition partition_from_json(const json& j);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

// Writes only when the file is absent or its content differs, leaving mtimes
// untouched on no-op reruns.
bool write_text_file_if_changed(const std::filesystem::path& path, const std::string& content);

} // namespace lmgraph
