#include "lmgraph/relation/export.hpp"

#include <algorithm>
#include <sstream>

namespace lmgraph::relation {

namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string format_double(double value) {
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

} // namespace

std::string to_graphml(const LanguageModelGraph& graph) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"type_tag\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <graph id=\"language_model_graph\" edgedefault=\"undirected\">\n";
    for (const auto& model : graph.nodes.models()) {
        out << "    <node id=\"" << xml_escape(model.id) << "\">";
        if (model.type_tag)
            out << "<data key=\"d0\">" << xml_escape(*model.type_tag) << "</data>";
        out << "</node>\n";
    }
    for (const auto& edge : graph.edges) {
        out << "    <edge source=\"" << xml_escape(graph.nodes.at(edge.pair.i).id)
            << "\" target=\"" << xml_escape(graph.nodes.at(edge.pair.j).id) << "\">"
            << "<data key=\"d1\">" << format_double(edge.weight) << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

std::string to_dot(const LanguageModelGraph& graph) {
    double max_weight = 0.0;
    for (const auto& edge : graph.edges) max_weight = std::max(max_weight, edge.weight);

    std::ostringstream out;
    out << "graph language_model_graph {\n"
        << "  layout=neato;\n  node [shape=ellipse, style=filled, fillcolor=lightsteelblue];\n";
    for (const auto& model : graph.nodes.models()) {
        out << "  \"" << dot_escape(model.id) << "\"";
        if (model.type_tag) out << " [xlabel=\"" << dot_escape(*model.type_tag) << "\"]";
        out << ";\n";
    }
    for (const auto& edge : graph.edges) {
        double penwidth = max_weight > 0.0 ? 4.0 * edge.weight / max_weight : 1.0;
        out << "  \"" << dot_escape(graph.nodes.at(edge.pair.i).id) << "\" -- \""
            << dot_escape(graph.nodes.at(edge.pair.j).id) << "\" [penwidth="
            << format_double(penwidth) << ", label=\"" << format_double(edge.weight) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace lmgraph::relation
