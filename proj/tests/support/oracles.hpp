#pragma once

#include <optional>
#include <vector>

#include "fareyforge/graph.hpp"
#include "fareyforge/tree_tools.hpp"

namespace fareyforge::testing {

// Exhaustive bipartition min-cut oracles (multiplicities counted).
int lambda_global_oracle(const MultiGraph& g);
int lambda_pair_oracle(const MultiGraph& g, const Vertex& u, const Vertex& v);

// Is (side_a, rest) a bond: both sides nonempty and connected?
bool is_bond_oracle(const MultiGraph& g, const std::set<Vertex>& side_a);

// Backtracking isomorphism test with color refinement.
bool isomorphic(const MultiGraph& a, const MultiGraph& b);

// Every spanning tree of g (edge subsets forming trees), canonical order.
std::vector<MultiGraph> all_spanning_trees(const MultiGraph& g);

// Brute-force order-respecting embedding of the full binary tree of height h.
bool binary_subdivision_oracle(const RootedTree& t, int height);

// Backtracking witnesses without flow machinery.
bool star_exists_oracle(const MultiGraph& g, const std::set<Vertex>& u_set, int k);
bool comb_exists_oracle(const MultiGraph& g, const std::set<Vertex>& u_set, int k);

} // namespace fareyforge::testing
