#pragma once

#include <map>
#include <string>
#include <vector>

#include "fareyforge/fraction.hpp"
#include "fareyforge/graph.hpp"

namespace fareyforge {

// Order cap for the recursive Farey constructions; exceeding it raises a
// resource error (2^16 blue edges is already well past anything useful).
constexpr int farey_order_cap = 16;

// Recursive halved Farey graph of the given order: order 0 is the single blue
// edge 0/1 – 1/0; each step adds the mediant of every blue edge, joined to
// both ends by blue edges, and recolors the old blue edges black.
ColoredGraph halved_farey(int order, int cap = farey_order_cap);

// Union of halved_farey(order) and its mirror under x ↦ −x, glued along the
// order-0 edge; colors discarded.
MultiGraph farey_truncation(int order, int cap = farey_order_cap);

// Graph on the given fractions with an edge between a/b and c/d iff
// |ad − cb| = 1. The recursive construction must agree with this one on its
// own vertex set.
MultiGraph farey_by_determinant(const std::vector<Fraction>& vs);

// Vertices of halved_farey(order) lie on a path of its level-`level` blue
// edges running 0/1 → 1/0 in increasing numeric order.
std::vector<Fraction> blue_level_path(int order, int level);

// Complete d-ary tree of the given height plus an apex joined to every tree
// vertex.
struct ApexTree {
    MultiGraph graph;
    Vertex root;
    Vertex apex;
};

ApexTree tree_join(int branching, int height);

// --- gadget family -------------------------------------------------------

enum class GadgetKind {
    arrow,
    arrow_barrage,
    muscle,
    muscle_barrage,
    football,
    half_plow,
    plow,
};

std::string to_string(GadgetKind kind);
GadgetKind parse_gadget_kind(const std::string& name);

// Wiring for build_gadget: `fan` is the finite stand-in for "infinitely many"
// head-attachment edges of an arrow, `count` the number of arrows/muscles in
// a barrage.
struct GadgetWiring {
    int fan = 1;
    int count = 1;
};

struct GadgetReport {
    GadgetKind kind = GadgetKind::arrow;
    std::map<std::string, Vertex> endpoints;  // role name -> vertex
    std::vector<int> payload_strengths;       // λ achieved per payload
    int achieved = 0;                         // strength the validator confirmed
    bool valid = false;
    std::vector<std::string> reasons;         // violated clauses; empty iff valid
};

struct BuiltGadget {
    MultiGraph graph;
    GadgetReport report;
};

// Builds the requested gadget around fresh endpoints, payload vertices
// prefixed per payload. Attachment vertices are chosen lexicographically.
// Footballs are validated only, never built.
BuiltGadget build_gadget(GadgetKind kind, const std::vector<MultiGraph>& payloads,
                         const GadgetWiring& wiring = {});

// Checks every clause of the kind's definition with "infinitely
// edge-connected" replaced by "λ >= k". Roles name the required vertices:
// arrow kinds take nock/head, plow takes u/head/v, the rest take u/v.
GadgetReport validate_gadget(const MultiGraph& g, GadgetKind kind,
                             const std::map<std::string, Vertex>& roles, int k);

} // namespace fareyforge
