#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fareyforge/graph.hpp"

namespace fareyforge {

// Certificate that `pattern` is a minor of `host`: assign maps a subset of
// host vertices onto pattern vertices; preimages are the branch sets.
struct MinorMap {
    MultiGraph host;
    MultiGraph pattern;
    std::map<Vertex, Vertex> assign;

    std::map<Vertex, std::set<Vertex>> branch_sets() const;
    static MinorMap identity(const MultiGraph& g);

    bool operator==(const MinorMap&) const = default;
};

struct ModelValidation {
    bool ok = false;
    std::vector<std::string> violations;
};

// The three model invariants: assign surjective onto the pattern, branch sets
// connected in the host, every pattern edge covered by a host edge.
ModelValidation validate_model(const MinorMap& m);

// outer: H ≽ H', inner: G ≽ H gives G ≽ H'; the domain is the inner preimage
// of the outer domain.
MinorMap compose(const MinorMap& outer, const MinorMap& inner);

// Chain G_0 ≽ G_1 ≽ ... with nested kept subgraphs H_i ⊆ G_i on which each
// map restricts to the identity.
struct ModelChain {
    std::vector<MultiGraph> graphs; // G_0 .. G_n
    std::vector<MultiGraph> kept;   // H_0 ⊆ ... ⊆ H_n, H_i ⊆ G_i
    std::vector<MinorMap> maps;     // maps[i]: G_i ≽ G_{i+1}
};

// Accumulates branch sets as ascending unions through the stages; equals the
// iterated compose and is validated on the way out. Identity-restriction
// violations are input errors naming the stage.
MinorMap limit_chain(const ModelChain& chain);

enum class SearchStatus { found, absent, budget_exhausted };

struct MinorSearchResult {
    SearchStatus status = SearchStatus::absent;
    std::optional<MinorMap> model;
    std::uint64_t nodes_visited = 0;
};

// Backtracking search over branch-set assignments, branch growth lexicographic
// and pattern vertices by descending degree. "absent" only on full
// exhaustion. `pins` force a host vertex into a pattern vertex's branch set
// (pinned pattern vertices are placed first).
MinorSearchResult find_minor(const MultiGraph& host, const MultiGraph& pattern,
                             std::uint64_t budget = 10'000'000,
                             const std::map<Vertex, Vertex>& pins = {});

struct TwoCycles {
    std::vector<Vertex> first, second; // vertex-disjoint cycles
};

// Exhaustive (absence is verified); enumeration overruns raise a resource
// error instead of guessing.
std::optional<TwoCycles> two_disjoint_cycles(const MultiGraph& g,
                                             std::uint64_t budget = 50'000'000);

// Model of the full Farey truncation of order n-1 inside the halved Farey
// graph of order n: one blue level-1 edge deleted, the order-0 vertex pair
// contracted, everything else singleton.
MinorMap full_farey_minor_in_halved(int order);

// Model JSON v1.
struct LoadedModel {
    MultiGraph pattern;
    std::map<Vertex, std::set<Vertex>> branch_sets;

    MinorMap against(const MultiGraph& host) const;
};

LoadedModel read_model(const std::string& bytes);
std::string write_model(const MinorMap& m);

} // namespace fareyforge
