#pragma once

#include <string>

#include "lmgraph/types.hpp"

namespace lmgraph::relation {

// GraphML with node id/type_tag attributes and edge weight attribute.
std::string to_graphml(const LanguageModelGraph& graph);

// Graphviz DOT; edge penwidth scales linearly with weight so stronger
// relationships render thicker.
std::string to_dot(const LanguageModelGraph& graph);

} // namespace lmgraph::relation
