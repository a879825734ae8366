#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fareyforge/errors.hpp"

namespace fareyforge {

// Vertex identity is a nonempty token; all tie-breaking in the library is
// lexicographic on tokens, which keeps every search reproducible.
using Vertex = std::string;

// Unordered edge stored as (min, max).
using EdgeKey = std::pair<Vertex, Vertex>;

inline EdgeKey edge_key(const Vertex& a, const Vertex& b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

// Finite undirected multigraph. Loops are rejected; parallel edges carry a
// positive multiplicity. Values are immutable in spirit: operations below
// return new graphs and never mutate their inputs.
class MultiGraph {
public:
    MultiGraph() = default;

    void add_vertex(const Vertex& v);
    // Endpoints must already exist; loops are an input error.
    void add_edge(const Vertex& a, const Vertex& b, int multiplicity = 1);
    // Removes up to `multiplicity` parallel copies (all of them if fewer exist).
    void remove_edge(const Vertex& a, const Vertex& b, int multiplicity = 1);

    bool has_vertex(const Vertex& v) const { return vertices_.count(v) > 0; }
    int multiplicity(const Vertex& a, const Vertex& b) const;
    bool has_edge(const Vertex& a, const Vertex& b) const { return multiplicity(a, b) > 0; }

    const std::set<Vertex>& vertices() const { return vertices_; }
    const std::map<EdgeKey, int>& edges() const { return edges_; }

    std::vector<Vertex> neighbors(const Vertex& v) const;   // sorted, distinct
    int degree(const Vertex& v) const;                      // counts multiplicity

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const;                         // counts multiplicity
    std::size_t distinct_edge_count() const { return edges_.size(); }
    bool is_simple() const;

    bool operator==(const MultiGraph&) const = default;

private:
    std::set<Vertex> vertices_;
    std::map<EdgeKey, int> edges_;
};

// ∂x: the vertices of x incident to at least one edge leaving x.
std::set<Vertex> boundary(const MultiGraph& g, const std::set<Vertex>& x);

// Deterministic name for a contracted part: sorted member tokens joined by
// '+', bumped with apostrophes if the name is already taken.
Vertex contracted_name(const std::set<Vertex>& part, const std::set<Vertex>& taken);

// Quotient by pairwise disjoint (possibly disconnected) vertex sets. Parallel
// edges are kept, edges inside one part are dropped.
MultiGraph contract_sets(const MultiGraph& g, const std::vector<std::set<Vertex>>& parts);

MultiGraph induced(const MultiGraph& g, const std::set<Vertex>& x);

// Union of two graphs over a common token space; edge multiplicity is the max
// of the two sides (the right semantics for uniting subgraphs of one host).
MultiGraph graph_union(const MultiGraph& a, const MultiGraph& b);

MultiGraph simple_view(const MultiGraph& g);

bool is_connected(const MultiGraph& g);
bool is_tree(const MultiGraph& g);
std::vector<std::set<Vertex>> components(const MultiGraph& g);
// Component containing v (input error if v is unknown).
std::set<Vertex> component_of(const MultiGraph& g, const Vertex& v);
// True iff g has no cycle: no parallel edges and the underlying graph is a forest.
bool is_forest(const MultiGraph& g);

// Shortest path with lexicographic tie-breaking (BFS visiting sorted
// neighbors); empty if unreachable. `from`/`to` may coincide.
std::vector<Vertex> shortest_path(const MultiGraph& g, const Vertex& from, const Vertex& to);
// Shortest path from any vertex of `from` to any vertex of `to`, avoiding the
// given edges; empty if none.
std::vector<Vertex> shortest_path_avoiding(const MultiGraph& g, const std::set<Vertex>& from,
                                           const std::set<Vertex>& to,
                                           const std::set<EdgeKey>& forbidden_edges);

// Edge colouring for the halved Farey family; the graph must be simple.
enum class EdgeColor { blue, black };

struct ColoredGraph {
    MultiGraph graph;
    std::map<EdgeKey, EdgeColor> colors;

    // Every edge coloured exactly once, no parallel edges.
    void check() const;
};

} // namespace fareyforge
