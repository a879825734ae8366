#pragma once

#include <optional>
#include <string>

#include "fareyforge/graph.hpp"

namespace fareyforge {

// Graph JSON v1. Repeated edge entries encode multiplicity; "colors" is legal
// only for simple graphs and keys edges as "minToken|maxToken".
struct LoadedGraph {
    MultiGraph graph;
    std::optional<std::map<EdgeKey, EdgeColor>> colors;

    ColoredGraph colored() const;
};

LoadedGraph read_graph(const std::string& bytes);
LoadedGraph read_graph_file(const std::string& path);

std::string write_graph(const MultiGraph& g);
std::string write_graph(const ColoredGraph& g);

// Undirected DOT; blue edges carry color=blue.
std::string to_dot(const MultiGraph& g, const std::map<EdgeKey, EdgeColor>* colors = nullptr,
                   const std::string& name = "fareyforge");
inline std::string to_dot(const ColoredGraph& g) { return to_dot(g.graph, &g.colors); }

} // namespace fareyforge
