#pragma once

#include <optional>
#include <vector>

#include "fareyforge/connectivity.hpp"
#include "fareyforge/graph.hpp"

namespace fareyforge {

// Oriented separation (A, B) of a ground set: A ∪ B = V. The order is
// (A,B) <= (C,D) iff A ⊆ C and B ⊇ D; the inverse (B,A) reverses it.
struct OrientedSeparation {
    std::set<Vertex> side_a, side_b;

    OrientedSeparation inverse() const { return {side_b, side_a}; }
    std::set<Vertex> ground() const;
    bool leq(const OrientedSeparation& other) const;
    // A ∩ B = ∅ besides A ∪ B = V: the bond-induced case.
    bool is_bipartition() const;

    bool operator==(const OrientedSeparation&) const = default;
    bool operator<(const OrientedSeparation& o) const {
        return std::tie(side_a, side_b) < std::tie(o.side_a, o.side_b);
    }
};

// Finite separation system realized over concrete oriented separations:
// element i has inverse `inverse[i]` and the order is the containment order.
struct SeparationSystem {
    std::vector<OrientedSeparation> items;
    std::vector<std::size_t> inverse;

    static SeparationSystem from_separations(std::vector<OrientedSeparation> seps);
    // The tree-edge orientation system of a tree: items are the component
    // bipartitions of the oriented edges, ordered like the edges themselves.
    static SeparationSystem from_tree_edges(const MultiGraph& tree);

    bool leq(std::size_t i, std::size_t j) const { return items[i].leq(items[j]); }
    // Involution laws: self-inverse and order-reversing.
    bool validate(std::string* why = nullptr) const;
    bool is_star(const std::vector<std::size_t>& member_indices) const;
};

// Star of separations: r <= s* for all distinct members, no member together
// with its inverse, and no degenerate member with side B = V. Mixed ground
// sets are an input error.
bool is_star(const std::vector<OrientedSeparation>& sigma);

// Oriented tree edge.
using OrientedEdge = std::pair<Vertex, Vertex>;

// Natural partial order on oriented tree edges: (x,y) <= (u,v) iff equal, or
// the edges differ and the connecting path runs from y to u (avoiding x and v).
bool tree_edge_leq(const MultiGraph& tree, const OrientedEdge& e, const OrientedEdge& f);

// F⃗_t: every incident edge oriented toward the node.
std::vector<OrientedEdge> oriented_star_at(const MultiGraph& tree, const Vertex& node);

// Tree whose oriented edges carry separations, inversion-compatible and
// order-propagating.
struct STree {
    MultiGraph tree;
    std::map<OrientedEdge, OrientedSeparation> alpha;

    bool validate(std::string* why = nullptr) const;
};

// The S-tree induced by a spanning tree: alpha sends each oriented tree edge
// to the bipartition by the two components of the tree minus that edge. Every
// image is a bond of g.
STree stree_from_spanning_tree(const MultiGraph& g, const MultiGraph& spanning_tree);

// Intersection of all B-sides; the empty star yields the ground set.
std::set<Vertex> star_part(const std::vector<OrientedSeparation>& sigma,
                           const std::set<Vertex>& ground);

struct SubstarResult {
    std::vector<std::size_t> indices; // contains i_star, ascending
    std::set<Vertex> part;
    bool reached_target = false;
};

// Greedy tree-growing selection of a substar whose part is connected in g:
// grows a tree inside the running part that contains every admitted boundary
// ∂B_j, admitting the next separation only if its A-side avoids the tree.
// Soundness (connected part containing ∂B_{i_star}) always holds; the size
// target is best-effort.
SubstarResult connected_substar(const MultiGraph& g,
                                const std::vector<OrientedSeparation>& sigma, std::size_t i_star,
                                std::size_t target);

// Alpha restricted to the subtree induced by `keep`; result is a valid STree.
STree restrict_stree(const STree& s, const std::set<Vertex>& keep);

} // namespace fareyforge
