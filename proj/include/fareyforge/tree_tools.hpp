#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fareyforge/graph.hpp"

namespace fareyforge {

// Parent-indexed rooted tree; the root has no parent entry.
struct RootedTree {
    Vertex root;
    std::map<Vertex, Vertex> parent;

    std::set<Vertex> nodes() const;
    std::map<Vertex, std::vector<Vertex>> children() const; // sorted child lists
    // Exactly one root, acyclic, every node reaches the root.
    void check() const;
    bool is_ancestor(const Vertex& above, const Vertex& below) const; // reflexive
};

// Rooted-tree JSON v1.
RootedTree read_rooted_tree(const std::string& bytes);
std::string write_rooted_tree(const RootedTree& t);

struct PruneResult {
    std::map<Vertex, int> label;
    int rounds = 0; // 1 + max label
};

// Recursive pruning: round r labels exactly the still-unlabelled nodes whose
// still-unlabelled up-closure is a chain; finite trees always empty out.
PruneResult prune_labels(const RootedTree& t);

// Leaf order 0; internal order = max child order, +1 when at least two
// children attain that max. Returns the root's order.
int branch_order(const RootedTree& t);

// Witness for an order-respecting embedding of the full binary tree of height
// h: heap position p (1-based) maps to a node, every pattern parent a strict
// ancestor of its children, the two child subtrees through incomparable
// branches.
struct SubdivisionWitness {
    int height = 0;
    std::map<int, Vertex> node_at; // heap positions 1 .. 2^(h+1)-1
};

std::optional<SubdivisionWitness> contains_binary_subdivision(const RootedTree& t, int height);

// --- star-comb search -----------------------------------------------------

struct CombWitness {
    std::vector<Vertex> spine;               // path in g
    std::vector<std::vector<Vertex>> teeth;  // each starts on the spine, ends in U
};

struct StarWitness {
    Vertex center;
    std::vector<std::vector<Vertex>> paths;  // each starts at the center, ends in U
};

struct StarCombOutcome {
    std::optional<StarWitness> star;
    std::optional<CombWitness> comb;
    // True when the search space was fully exhausted, so an empty outcome is a
    // verified absence rather than a budget stop.
    bool exhausted_exactly = false;
    std::uint64_t nodes_visited = 0;

    bool found() const { return star.has_value() || comb.has_value(); }
};

// Finds a subdivided star with >= k leaves in u_set or a comb with >= k teeth
// in u_set, stars first. Exact whenever the spine enumeration fits the budget
// (always for the small hosts the test ranges use).
StarCombOutcome star_comb_search(const MultiGraph& g, const std::set<Vertex>& u_set, int k,
                                 std::uint64_t budget = 5'000'000);

bool validate_star(const MultiGraph& g, const StarWitness& w, const std::set<Vertex>& u_set,
                   int k);
bool validate_comb(const MultiGraph& g, const CombWitness& w, const std::set<Vertex>& u_set,
                   int k);

} // namespace fareyforge
