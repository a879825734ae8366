#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "fareyforge/generators.hpp"
#include "fareyforge/graph.hpp"
#include "fareyforge/minors.hpp"

namespace fareyforge {

// Expected structured outcome of an engine route that could not complete;
// distinct from input errors, which throw.
struct EngineFailure {
    std::string kind;   // "dense regime", "surrogate-connectivity shortfall", ...
    std::string detail;
};

struct SeparatorResult {
    Vertex a, b;
    std::set<Vertex> cut; // separates a and b once the a–b edges are removed
};

// Over all pairs a in a_set, b in b_set (a != b), the smallest vertex set S
// with |S| <= s_max separating a and b in g minus the a–b edges; ties break
// toward the lexicographically first pair. No admissible pair at all is an
// input error; no separator within the bound gives nullopt.
std::optional<SeparatorResult> find_small_separator(const MultiGraph& g,
                                                    const std::set<Vertex>& a_set,
                                                    const std::set<Vertex>& b_set, int s_max);

struct FootballSeparation {
    MultiGraph h;
    Vertex merged_u, merged_v;
    std::set<Vertex> cut;
    int lambda_h = 0;
};

// Reduces a football to a separated instance: picks neighbours a of u and b of
// v plus a separator S in (g−u−v)−ab, strips the other u/v edges, contracts ua
// and vb. Absence of a separator within s_max is the "dense regime" failure.
std::variant<FootballSeparation, EngineFailure> football_to_separated(const MultiGraph& g,
                                                                      const Vertex& u,
                                                                      const Vertex& v, int k,
                                                                      int s_max);

struct SplitReport {
    int case_id = 0;             // 1: classes disjoint, 2: classes meet in S
    bool x_connected = false;    // X nonempty and connected in g
    bool strength_ok = false;    // both quotients reach λ >= k
    bool avoids_endpoints = false;
    bool attach_edges = false;   // u–X edge in H_u/X and v–X edge in H_v/X
    int lambda_u_quotient = 0;
    int lambda_v_quotient = 0;

    bool all_conditions() const {
        return x_connected && strength_ok && avoids_endpoints && attach_edges;
    }
};

struct SplitResult {
    MultiGraph h_u, h_v; // induced subgraphs of the input
    std::set<Vertex> x_set;
    SplitReport report;
};

// The two-case construction of induced subgraphs H_u, H_v overlapping in a
// connected set X, driven by the ~_k classes on both sides of the separator.
std::variant<SplitResult, EngineFailure> split_at_separator(const MultiGraph& g, const Vertex& u,
                                                            const Vertex& v,
                                                            const std::set<Vertex>& separator,
                                                            int k);

struct PlowExtract {
    MinorMap model;      // host = input graph, pattern = the plow
    Vertex head;         // pattern vertex of the plow head
    Vertex end_u, end_v; // pattern vertices holding u and v
    int achieved = 0;    // min λ of the two halves
    int lambda_host = 0;
    std::string route;   // "separator" or "pattern-search"
    GadgetReport gadget;
    std::optional<SplitReport> split_report;
    std::vector<EngineFailure> attempts; // routes that failed first
};

struct PlowOptions {
    int s_max = -1;                       // default: k
    std::uint64_t node_budget = 10'000'000;
};

struct PlowResult {
    std::optional<PlowExtract> extract;
    std::vector<EngineFailure> failures; // every route that failed, in order
    std::uint64_t nodes_visited = 0;

    bool ok() const { return extract.has_value(); }
};

// Theorem-style extraction: separator + split when a small separator exists,
// otherwise a direct backtracking search for a clique-halved plow pattern
// (strength capped by k and by what the host can carry, floor 2).
PlowResult plow_extract(const MultiGraph& g, const Vertex& u, const Vertex& v, int k,
                        const PlowOptions& opts = {});

// --- iterative halved-Farey construction -----------------------------------

struct EngineExtraction {
    std::string x_fraction, y_fraction; // blue edge being processed
    Vertex x_token, y_token;
    bool ok = false;
    std::string route;
    int achieved = 0;
    Vertex head_token;
    std::string head_fraction;
    std::vector<EngineFailure> failures;
};

struct EngineRound {
    int order = 0; // the order completed by this round
    int min_achieved = 0;
    std::vector<EngineExtraction> extractions;
};

struct EngineTrace {
    int completed_order = 0;   // m: the largest fully completed order
    std::string stop_reason;   // "order-reached", "extraction-failed", ...
    std::vector<EngineRound> rounds;
    ModelChain chain;
    MinorMap final_model;      // host = input graph, pattern = halved_farey(m)
    std::map<std::string, Vertex> fraction_token; // fraction text -> chain token
    std::uint64_t nodes_used = 0;
};

struct EngineOptions {
    int s_max = -1;            // default: k
    std::uint64_t node_budget = 10'000'000;
    std::optional<double> time_budget_seconds; // checked between rounds only
};

// Round 0 designates the lexicographically least edge as the order-0 graph
// with the rest of the host as its reservoir; each later round extracts a
// plow inside every blue edge's reservoir, the head becoming the mediant
// vertex and the halves the two new reservoirs. Stops at n_max, on budget, or
// at the first failed extraction; the trace replays through limit_chain to
// the returned model.
EngineTrace farey_engine(const MultiGraph& g, int k, int n_max, const EngineOptions& opts = {});

} // namespace fareyforge
