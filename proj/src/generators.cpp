#include "fareyforge/generators.hpp"

#include <algorithm>

#include "fareyforge/connectivity.hpp"

namespace fareyforge {

namespace {

struct FractionEdge {
    Fraction a, b;
};

// Blue edges of each level, kept as fraction pairs so mediants are exact.
struct FareyLevels {
    std::vector<std::vector<FractionEdge>> blue_per_level;

    explicit FareyLevels(int order, int cap) {
        if (order < 0)
            throw input_error("halved farey order must be >= 0");
        if (order > cap)
            throw resource_error("halved farey order " + std::to_string(order) +
                                 " exceeds cap " + std::to_string(cap));
        blue_per_level.push_back({{Fraction(0, 1), Fraction::infinity()}});
        for (int level = 1; level <= order; ++level) {
            std::vector<FractionEdge> next;
            for (const FractionEdge& e : blue_per_level.back()) {
                Fraction m = mediant(e.a, e.b);
                next.push_back({e.a, m});
                next.push_back({m, e.b});
            }
            blue_per_level.push_back(std::move(next));
        }
    }
};

} // namespace

ColoredGraph halved_farey(int order, int cap) {
    FareyLevels levels(order, cap);
    ColoredGraph out;
    out.graph.add_vertex(Fraction(0, 1).text());
    out.graph.add_vertex(Fraction::infinity().text());
    for (int level = 0; level <= order; ++level) {
        bool newest = level == static_cast<int>(levels.blue_per_level.size()) - 1;
        for (const FractionEdge& e : levels.blue_per_level[level]) {
            out.graph.add_vertex(e.a.text());
            out.graph.add_vertex(e.b.text());
            out.graph.add_edge(e.a.text(), e.b.text());
            out.colors[edge_key(e.a.text(), e.b.text())] =
                newest ? EdgeColor::blue : EdgeColor::black;
        }
    }
    return out;
}

MultiGraph farey_truncation(int order, int cap) {
    ColoredGraph half = halved_farey(order, cap);
    MultiGraph out = half.graph;
    for (const Vertex& v : half.graph.vertices())
        out.add_vertex(mirrored(Fraction::parse(v)).text());
    for (const auto& [e, m] : half.graph.edges()) {
        Vertex a = mirrored(Fraction::parse(e.first)).text();
        Vertex b = mirrored(Fraction::parse(e.second)).text();
        if (!out.has_edge(a, b))
            out.add_edge(a, b);
    }
    return out;
}

MultiGraph farey_by_determinant(const std::vector<Fraction>& vs) {
    MultiGraph out;
    for (const Fraction& f : vs) {
        Vertex token = f.text();
        if (out.has_vertex(token))
            throw input_error("farey_by_determinant: duplicate fraction " + token);
        // Fractions are canonical by construction; re-parse guards values
        // assembled through designated initializers.
        Fraction::parse(token);
        out.add_vertex(token);
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (cross_determinant(vs[i], vs[j]) == 1)
                out.add_edge(vs[i].text(), vs[j].text());
    return out;
}

std::vector<Fraction> blue_level_path(int order, int level) {
    if (level < 0 || level > order)
        throw input_error("blue_level_path: level " + std::to_string(level) +
                          " outside 0.." + std::to_string(order));
    FareyLevels levels(level, farey_order_cap);
    std::vector<Fraction> vertices{Fraction(0, 1), Fraction::infinity()};
    for (const auto& level_edges : levels.blue_per_level)
        for (const FractionEdge& e : level_edges) {
            vertices.push_back(e.a);
            vertices.push_back(e.b);
        }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

ApexTree tree_join(int branching, int height) {
    if (branching < 1)
        throw input_error("tree_join: branching must be >= 1");
    if (height < 0)
        throw input_error("tree_join: height must be >= 0");
    if (branching > 9)
        throw input_error("tree_join: branching above 9 not supported by the naming scheme");
    ApexTree out;
    out.root = "n";
    out.apex = "t";
    out.graph.add_vertex(out.root);
    std::vector<Vertex> frontier{out.root};
    for (int level = 0; level < height; ++level) {
        std::vector<Vertex> next;
        for (const Vertex& parent : frontier)
            for (int c = 0; c < branching; ++c) {
                Vertex child = parent + static_cast<char>('0' + c);
                out.graph.add_vertex(child);
                out.graph.add_edge(parent, child);
                next.push_back(child);
            }
        frontier = std::move(next);
    }
    out.graph.add_vertex(out.apex);
    for (const Vertex& v : out.graph.vertices())
        if (v != out.apex)
            out.graph.add_edge(out.apex, v);
    return out;
}

// --- gadgets ---------------------------------------------------------------

std::string to_string(GadgetKind kind) {
    switch (kind) {
    case GadgetKind::arrow: return "arrow";
    case GadgetKind::arrow_barrage: return "arrow-barrage";
    case GadgetKind::muscle: return "muscle";
    case GadgetKind::muscle_barrage: return "muscle-barrage";
    case GadgetKind::football: return "football";
    case GadgetKind::half_plow: return "half-plow";
    case GadgetKind::plow: return "plow";
    }
    return "?";
}

GadgetKind parse_gadget_kind(const std::string& name) {
    for (GadgetKind k : {GadgetKind::arrow, GadgetKind::arrow_barrage, GadgetKind::muscle,
                         GadgetKind::muscle_barrage, GadgetKind::football, GadgetKind::half_plow,
                         GadgetKind::plow})
        if (to_string(k) == name)
            return k;
    throw input_error("unknown gadget kind '" + name + "'");
}

namespace {

// Copy `payload` into `g` with every vertex prefixed; returns the sorted
// new tokens.
std::vector<Vertex> splice_payload(MultiGraph& g, const MultiGraph& payload,
                                   const std::string& prefix) {
    std::vector<Vertex> tokens;
    for (const Vertex& v : payload.vertices()) {
        g.add_vertex(prefix + v);
        tokens.push_back(prefix + v);
    }
    for (const auto& [e, m] : payload.edges())
        g.add_edge(prefix + e.first, prefix + e.second, m);
    std::sort(tokens.begin(), tokens.end());
    return tokens;
}

void require_payloads(const std::vector<MultiGraph>& payloads, std::size_t count) {
    if (payloads.size() != count)
        throw input_error("gadget expects " + std::to_string(count) + " payload(s), got " +
                          std::to_string(payloads.size()));
    for (const MultiGraph& p : payloads) {
        if (p.vertex_count() == 0)
            throw input_error("gadget payload is empty");
        if (!is_connected(p))
            throw input_error("gadget payload must be connected");
    }
}

// One arrow: nock edge to the least payload vertex h, `fan` head edges to the
// next distinct payload vertices.
void wire_arrow(MultiGraph& g, const Vertex& nock, const Vertex& head,
                const std::vector<Vertex>& payload, int fan) {
    if (static_cast<int>(payload.size()) - 1 < fan)
        throw input_error("arrow payload too small for fan " + std::to_string(fan));
    g.add_edge(nock, payload[0]);
    for (int i = 1; i <= fan; ++i)
        g.add_edge(head, payload[i]);
}

void wire_muscle(MultiGraph& g, const Vertex& u, const Vertex& v,
                 const std::vector<Vertex>& payload) {
    if (payload.size() < 2)
        throw input_error("muscle payload needs at least 2 vertices");
    g.add_edge(u, payload[0]);
    g.add_edge(v, payload[1]);
}

} // namespace

BuiltGadget build_gadget(GadgetKind kind, const std::vector<MultiGraph>& payloads,
                         const GadgetWiring& wiring) {
    if (wiring.fan < 1 || wiring.count < 1)
        throw input_error("gadget wiring parameters must be >= 1");
    BuiltGadget out;
    out.report.kind = kind;
    MultiGraph& g = out.graph;
    std::map<std::string, Vertex> roles;

    auto barrage_payload = [&](std::size_t i) -> const MultiGraph& {
        // A barrage reuses a single payload for every member when only one is
        // given.
        return payloads.size() == 1 ? payloads[0] : payloads.at(i);
    };

    switch (kind) {
    case GadgetKind::arrow: {
        require_payloads(payloads, 1);
        g.add_vertex("u");
        g.add_vertex("v");
        auto p = splice_payload(g, payloads[0], "p0.");
        wire_arrow(g, "u", "v", p, wiring.fan);
        roles = {{"nock", "u"}, {"head", "v"}};
        break;
    }
    case GadgetKind::arrow_barrage: {
        if (payloads.size() != 1 && payloads.size() != static_cast<std::size_t>(wiring.count))
            throw input_error("arrow barrage needs 1 or `count` payloads");
        require_payloads(payloads, payloads.size());
        g.add_vertex("u");
        g.add_vertex("v");
        for (int i = 0; i < wiring.count; ++i) {
            auto p = splice_payload(g, barrage_payload(i), "p" + std::to_string(i) + ".");
            wire_arrow(g, "u", "v", p, wiring.fan);
        }
        roles = {{"nock", "u"}, {"head", "v"}};
        break;
    }
    case GadgetKind::muscle: {
        require_payloads(payloads, 1);
        g.add_vertex("u");
        g.add_vertex("v");
        auto p = splice_payload(g, payloads[0], "p0.");
        wire_muscle(g, "u", "v", p);
        roles = {{"u", "u"}, {"v", "v"}};
        break;
    }
    case GadgetKind::muscle_barrage: {
        if (payloads.size() != 1 && payloads.size() != static_cast<std::size_t>(wiring.count))
            throw input_error("muscle barrage needs 1 or `count` payloads");
        require_payloads(payloads, payloads.size());
        g.add_vertex("u");
        g.add_vertex("v");
        for (int i = 0; i < wiring.count; ++i) {
            auto p = splice_payload(g, barrage_payload(i), "p" + std::to_string(i) + ".");
            wire_muscle(g, "u", "v", p);
        }
        roles = {{"u", "u"}, {"v", "v"}};
        break;
    }
    case GadgetKind::half_plow: {
        // The half-plow is the payload itself with two adjacent vertices
        // designated as endvertices.
        require_payloads(payloads, 1);
        auto p = splice_payload(g, payloads[0], "p0.");
        if (g.distinct_edge_count() == 0)
            throw input_error("half-plow payload has no edge to designate");
        EdgeKey uv = g.edges().begin()->first;
        roles = {{"u", uv.first}, {"v", uv.second}};
        break;
    }
    case GadgetKind::plow: {
        require_payloads(payloads, 2);
        // Each half contributes an edge at the shared head: least edge of the
        // payload, its first endpoint glued onto "h".
        MultiGraph left, right;
        auto pl = splice_payload(left, payloads[0], "a.");
        auto pr = splice_payload(right, payloads[1], "b.");
        if (left.distinct_edge_count() == 0 || right.distinct_edge_count() == 0)
            throw input_error("plow payloads must contain an edge");
        EdgeKey le = left.edges().begin()->first;
        EdgeKey re = right.edges().begin()->first;
        auto glue = [&](const MultiGraph& half, const Vertex& at_head) {
            for (const Vertex& v : half.vertices())
                g.add_vertex(v == at_head ? "h" : v);
            for (const auto& [e, m] : half.edges()) {
                Vertex a = e.first == at_head ? "h" : e.first;
                Vertex b = e.second == at_head ? "h" : e.second;
                g.add_edge(a, b, m);
            }
        };
        glue(left, le.first);
        glue(right, re.first);
        roles = {{"u", le.second}, {"head", "h"}, {"v", re.second}};
        break;
    }
    case GadgetKind::football:
        throw input_error("footballs are validated, not built");
    }

    int k = lambda_infinite;
    for (const MultiGraph& p : payloads)
        k = std::min(k, lambda_global(p));
    out.report = validate_gadget(g, kind, roles, k == lambda_infinite ? 1 : std::max(k, 1));
    return out;
}

namespace {

void fail(GadgetReport& r, const std::string& reason) {
    r.reasons.push_back(reason);
}

Vertex role_vertex(const MultiGraph& g, const std::map<std::string, Vertex>& roles,
                   const std::string& name) {
    auto it = roles.find(name);
    if (it == roles.end())
        throw input_error("gadget validation: missing role '" + name + "'");
    if (!g.has_vertex(it->second))
        throw input_error("gadget validation: role '" + name + "' names unknown vertex '" +
                          it->second + "'");
    return it->second;
}

MultiGraph minus_vertices(const MultiGraph& g, const std::set<Vertex>& drop) {
    std::set<Vertex> keep;
    for (const Vertex& v : g.vertices())
        if (!drop.count(v))
            keep.insert(v);
    return induced(g, keep);
}

// Payload clauses shared by arrows and muscles: `payload` is g - u - v (or one
// component of it for barrages).
int check_payload(GadgetReport& r, const MultiGraph& payload, int k, const std::string& label) {
    if (!is_connected(payload) || payload.vertex_count() == 0) {
        fail(r, label + " is not connected");
        return 0;
    }
    int strength = lambda_global(payload);
    if (strength < k)
        fail(r, "λ(" + label + ")=" + std::to_string(strength) + " < " + std::to_string(k));
    r.payload_strengths.push_back(strength);
    return strength;
}

void check_arrow_shape(GadgetReport& r, const MultiGraph& g, const MultiGraph& payload,
                       const Vertex& nock, const Vertex& head, const std::string& label) {
    if (g.has_edge(nock, head))
        fail(r, label + ": nock and head are adjacent");
    std::vector<Vertex> nock_hits, head_hits;
    for (const Vertex& w : payload.vertices()) {
        if (g.has_edge(nock, w))
            nock_hits.push_back(w);
        if (g.has_edge(head, w))
            head_hits.push_back(w);
    }
    if (nock_hits.size() != 1 || g.multiplicity(nock, nock_hits.empty() ? "" : nock_hits[0]) != 1)
        fail(r, label + ": nock must send exactly one edge into the payload");
    else {
        const Vertex& h = nock_hits[0];
        if (g.has_edge(head, h))
            fail(r, label + ": head edges must avoid the nock attachment " + h);
    }
    if (head_hits.empty())
        fail(r, label + ": head sends no edge into the payload");
}

void check_muscle_shape(GadgetReport& r, const MultiGraph& g, const MultiGraph& payload,
                        const Vertex& u, const Vertex& v, const std::string& label) {
    if (g.has_edge(u, v))
        fail(r, label + ": endvertices are adjacent");
    std::vector<Vertex> u_hits, v_hits;
    int u_mult = 0, v_mult = 0;
    for (const Vertex& w : payload.vertices()) {
        u_mult += g.multiplicity(u, w);
        v_mult += g.multiplicity(v, w);
        if (g.has_edge(u, w))
            u_hits.push_back(w);
        if (g.has_edge(v, w))
            v_hits.push_back(w);
    }
    if (u_mult != 1 || v_mult != 1)
        fail(r, label + ": endvertices must each send exactly one edge into the payload");
    else if (u_hits[0] == v_hits[0])
        fail(r, label + ": attachment vertices must differ");
}

} // namespace

GadgetReport validate_gadget(const MultiGraph& g, GadgetKind kind,
                             const std::map<std::string, Vertex>& roles, int k) {
    GadgetReport r;
    r.kind = kind;
    r.achieved = 0;

    switch (kind) {
    case GadgetKind::arrow:
    case GadgetKind::arrow_barrage: {
        Vertex nock = role_vertex(g, roles, "nock");
        Vertex head = role_vertex(g, roles, "head");
        r.endpoints = {{"nock", nock}, {"head", head}};
        MultiGraph rest = minus_vertices(g, {nock, head});
        auto comps = components(rest);
        if (comps.empty()) {
            fail(r, "no payload");
            break;
        }
        if (kind == GadgetKind::arrow && comps.size() != 1)
            fail(r, "arrow payload must be a single connected graph");
        int weakest = lambda_infinite;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::string label = "payload " + std::to_string(i);
            MultiGraph payload = induced(g, comps[i]);
            weakest = std::min(weakest, check_payload(r, payload, k, label));
            check_arrow_shape(r, g, payload, nock, head, label);
        }
        r.achieved = std::min(weakest, k);
        break;
    }
    case GadgetKind::muscle:
    case GadgetKind::muscle_barrage: {
        Vertex u = role_vertex(g, roles, "u");
        Vertex v = role_vertex(g, roles, "v");
        r.endpoints = {{"u", u}, {"v", v}};
        MultiGraph rest = minus_vertices(g, {u, v});
        auto comps = components(rest);
        if (comps.empty()) {
            fail(r, "no payload");
            break;
        }
        if (kind == GadgetKind::muscle && comps.size() != 1)
            fail(r, "muscle payload must be a single connected graph");
        int weakest = lambda_infinite;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::string label = "payload " + std::to_string(i);
            MultiGraph payload = induced(g, comps[i]);
            weakest = std::min(weakest, check_payload(r, payload, k, label));
            check_muscle_shape(r, g, payload, u, v, label);
        }
        r.achieved = std::min(weakest, k);
        break;
    }
    case GadgetKind::football: {
        Vertex u = role_vertex(g, roles, "u");
        Vertex v = role_vertex(g, roles, "v");
        if (u == v)
            throw input_error("football endvertices must differ");
        r.endpoints = {{"u", u}, {"v", v}};
        int whole = lambda_global(g);
        if (whole < k)
            fail(r, "λ(G)=" + std::to_string(whole) + " < " + std::to_string(k));
        MultiGraph rest = minus_vertices(g, {u, v});
        int inner = rest.vertex_count() == 0 ? 0 : lambda_global(rest);
        if (inner < k)
            fail(r, "λ(G−u−v)=" + std::to_string(inner) + " < " + std::to_string(k));
        r.payload_strengths = {inner};
        r.achieved = std::min({whole, inner, k});
        break;
    }
    case GadgetKind::half_plow: {
        Vertex u = role_vertex(g, roles, "u");
        Vertex v = role_vertex(g, roles, "v");
        r.endpoints = {{"u", u}, {"v", v}};
        if (!g.has_edge(u, v))
            fail(r, "endvertices are not joined by an edge");
        int strength = lambda_global(g);
        if (strength < k)
            fail(r, "λ(G)=" + std::to_string(strength) + " < " + std::to_string(k));
        r.payload_strengths = {strength};
        r.achieved = std::min(strength, k);
        break;
    }
    case GadgetKind::plow: {
        Vertex u = role_vertex(g, roles, "u");
        Vertex head = role_vertex(g, roles, "head");
        Vertex v = role_vertex(g, roles, "v");
        r.endpoints = {{"u", u}, {"head", head}, {"v", v}};
        if (u == v || u == head || v == head) {
            fail(r, "plow endpoints and head must be three distinct vertices");
            break;
        }
        MultiGraph rest = minus_vertices(g, {head});
        std::set<Vertex> side_u, side_v;
        bool shape_ok = true;
        for (const auto& comp : components(rest)) {
            bool has_u = comp.count(u) > 0;
            bool has_v = comp.count(v) > 0;
            if (has_u && has_v) {
                fail(r, "head does not separate the two half-plows");
                shape_ok = false;
                break;
            }
            if (!has_u && !has_v) {
                fail(r, "component {" + *comp.begin() + ", ...} avoids both endvertices");
                shape_ok = false;
                continue;
            }
            (has_u ? side_u : side_v).insert(comp.begin(), comp.end());
        }
        if (!shape_ok)
            break;
        side_u.insert(head);
        side_v.insert(head);
        MultiGraph half_u = induced(g, side_u);
        MultiGraph half_v = induced(g, side_v);
        if (!half_u.has_edge(u, head))
            fail(r, "u-half is missing the edge u–head");
        if (!half_v.has_edge(head, v))
            fail(r, "v-half is missing the edge head–v");
        int lu = lambda_global(half_u);
        int lv = lambda_global(half_v);
        if (lu < k)
            fail(r, "λ(u-half)=" + std::to_string(lu) + " < " + std::to_string(k));
        if (lv < k)
            fail(r, "λ(v-half)=" + std::to_string(lv) + " < " + std::to_string(k));
        r.payload_strengths = {lu, lv};
        r.achieved = std::min({lu, lv, k});
        break;
    }
    }

    r.valid = r.reasons.empty();
    return r;
}

} // namespace fareyforge
