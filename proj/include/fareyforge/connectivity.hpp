#pragma once

#include <limits>
#include <vector>

#include "fareyforge/graph.hpp"

namespace fareyforge {

// Sentinel for "no two distinct vertices to separate" (single-vertex graphs).
constexpr int lambda_infinite = std::numeric_limits<int>::max();

// Size of a minimum edge cut, counting multiplicities. Disconnected graphs
// give 0, a single vertex gives lambda_infinite.
int lambda_global(const MultiGraph& g);
int lambda_pair(const MultiGraph& g, const Vertex& u, const Vertex& v);

// min(want, λ(u,v)) pairwise edge-disjoint u–v paths extracted from an
// integral flow; deterministic under lexicographic tie-breaking.
std::vector<std::vector<Vertex>> edge_disjoint_paths(const MultiGraph& g, const Vertex& u,
                                                     const Vertex& v, int want);

struct Cut {
    std::set<Vertex> side_a, side_b;
    std::vector<EdgeKey> crossing; // repeats encode multiplicity

    bool operator==(const Cut&) const = default;
};

// All cuts with |crossing| <= max_size whose sides both induce connected
// subgraphs, deduplicated up to side swap (side_a holds the least vertex) and
// sorted by (crossing size, side_a). Exhaustive; hosts above `vertex_cap`
// vertices raise a resource error.
std::vector<Cut> enumerate_bonds(const MultiGraph& g, int max_size, std::size_t vertex_cap = 20);

struct KClassPartition {
    int k = 1;
    std::vector<std::set<Vertex>> classes; // sorted by least member
};

// Classes of the equivalence λ(x,y) >= k (transitive since λ(x,z) >=
// min(λ(x,y), λ(y,z))).
KClassPartition k_classes(const MultiGraph& g, int k);
MultiGraph quotient_by_classes(const MultiGraph& g, const KClassPartition& p);

// True iff the two u–v paths traverse their common vertices in the same
// relative order. Endpoint mismatch is an input error.
bool order_compatible(const std::vector<Vertex>& p, const std::vector<Vertex>& q);

} // namespace fareyforge
