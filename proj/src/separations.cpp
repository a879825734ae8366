#include "fareyforge/separations.hpp"

#include <algorithm>

namespace fareyforge {

std::set<Vertex> OrientedSeparation::ground() const {
    std::set<Vertex> g = side_a;
    g.insert(side_b.begin(), side_b.end());
    return g;
}

bool OrientedSeparation::leq(const OrientedSeparation& other) const {
    return std::includes(other.side_a.begin(), other.side_a.end(), side_a.begin(), side_a.end()) &&
           std::includes(side_b.begin(), side_b.end(), other.side_b.begin(), other.side_b.end());
}

bool OrientedSeparation::is_bipartition() const {
    for (const Vertex& v : side_a)
        if (side_b.count(v))
            return false;
    return true;
}

SeparationSystem SeparationSystem::from_separations(std::vector<OrientedSeparation> seps) {
    SeparationSystem sys;
    // Close under inversion so the involution is total.
    std::set<OrientedSeparation> all(seps.begin(), seps.end());
    for (const OrientedSeparation& s : seps)
        all.insert(s.inverse());
    sys.items.assign(all.begin(), all.end());
    sys.inverse.resize(sys.items.size());
    for (std::size_t i = 0; i < sys.items.size(); ++i) {
        auto it = all.find(sys.items[i].inverse());
        sys.inverse[i] =
            static_cast<std::size_t>(std::distance(all.begin(), it));
    }
    return sys;
}

SeparationSystem SeparationSystem::from_tree_edges(const MultiGraph& tree) {
    if (!is_tree(tree))
        throw input_error("from_tree_edges: graph is not a tree");
    std::vector<OrientedSeparation> seps;
    for (const auto& [e, m] : tree.edges()) {
        MultiGraph cutined = tree;
        cutined.remove_edge(e.first, e.second);
        std::set<Vertex> side_first = component_of(cutined, e.first);
        std::set<Vertex> side_second = component_of(cutined, e.second);
        seps.push_back({side_first, side_second});
    }
    return from_separations(std::move(seps));
}

bool SeparationSystem::validate(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (inverse.size() != items.size() || inverse[i] >= items.size())
            return fail("involution is not a map on the elements");
        if (inverse[inverse[i]] != i)
            return fail("involution is not self-inverse at element " + std::to_string(i));
        if (items[inverse[i]] != items[i].inverse())
            return fail("involution disagrees with side swap at element " + std::to_string(i));
    }
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t j = 0; j < items.size(); ++j)
            if (leq(i, j) != leq(inverse[j], inverse[i]))
                return fail("involution fails to reverse the order at (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
    return true;
}

bool SeparationSystem::is_star(const std::vector<std::size_t>& member_indices) const {
    std::vector<OrientedSeparation> sigma;
    for (std::size_t i : member_indices)
        sigma.push_back(items.at(i));
    return fareyforge::is_star(sigma);
}

bool is_star(const std::vector<OrientedSeparation>& sigma) {
    if (sigma.empty())
        return true;
    std::set<Vertex> ground = sigma.front().ground();
    for (const OrientedSeparation& s : sigma)
        if (s.ground() != ground)
            throw input_error("is_star: members live over mixed ground sets");
    for (const OrientedSeparation& s : sigma)
        if (s.side_b == ground)
            return false; // degenerate member
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        for (std::size_t j = 0; j < sigma.size(); ++j) {
            if (i == j)
                continue;
            if (sigma[i] == sigma[j].inverse())
                return false;
            if (!sigma[i].leq(sigma[j].inverse()))
                return false;
        }
    }
    return true;
}

bool tree_edge_leq(const MultiGraph& tree, const OrientedEdge& e, const OrientedEdge& f) {
    if (!tree.has_edge(e.first, e.second) || !tree.has_edge(f.first, f.second))
        throw input_error("tree_edge_leq: edge not in tree");
    if (edge_key(e.first, e.second) == edge_key(f.first, f.second))
        return e == f;
    std::vector<Vertex> path = shortest_path(tree, e.second, f.first);
    for (const Vertex& v : path)
        if (v == e.first || v == f.second)
            return false;
    return true;
}

std::vector<OrientedEdge> oriented_star_at(const MultiGraph& tree, const Vertex& node) {
    if (!tree.has_vertex(node))
        throw input_error("oriented_star_at: unknown node '" + node + "'");
    std::vector<OrientedEdge> out;
    for (const Vertex& w : tree.neighbors(node))
        out.push_back({w, node});
    return out;
}

bool STree::validate(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (!is_tree(tree))
        return fail("underlying graph is not a tree");
    std::vector<OrientedEdge> oriented;
    for (const auto& [e, m] : tree.edges()) {
        oriented.push_back({e.first, e.second});
        oriented.push_back({e.second, e.first});
    }
    for (const OrientedEdge& e : oriented)
        if (!alpha.count(e))
            return fail("alpha missing for oriented edge (" + e.first + "," + e.second + ")");
    if (alpha.size() != oriented.size())
        return fail("alpha carries entries for edges outside the tree");
    for (const OrientedEdge& e : oriented) {
        OrientedEdge rev{e.second, e.first};
        if (alpha.at(rev) != alpha.at(e).inverse())
            return fail("alpha does not commute with inversion at (" + e.first + "," + e.second +
                        ")");
    }
    for (const OrientedEdge& e : oriented)
        for (const OrientedEdge& f : oriented)
            if (tree_edge_leq(tree, e, f) && !alpha.at(e).leq(alpha.at(f)))
                return fail("alpha does not propagate (" + e.first + "," + e.second + ") <= (" +
                            f.first + "," + f.second + ")");
    return true;
}

STree stree_from_spanning_tree(const MultiGraph& g, const MultiGraph& spanning_tree) {
    if (!is_connected(g))
        throw input_error("stree_from_spanning_tree: graph must be connected");
    if (!is_tree(spanning_tree) || spanning_tree.vertices() != g.vertices())
        throw input_error("stree_from_spanning_tree: second argument must span the graph");
    for (const auto& [e, m] : spanning_tree.edges())
        if (!g.has_edge(e.first, e.second))
            throw input_error("stree_from_spanning_tree: tree edge {" + e.first + "," + e.second +
                              "} missing from the graph");
    STree out;
    out.tree = spanning_tree;
    for (const auto& [e, m] : spanning_tree.edges()) {
        MultiGraph cutined = spanning_tree;
        cutined.remove_edge(e.first, e.second);
        OrientedSeparation sep{component_of(cutined, e.first), component_of(cutined, e.second)};
        out.alpha[{e.first, e.second}] = sep;
        out.alpha[{e.second, e.first}] = sep.inverse();
    }
    std::string why;
    if (!out.validate(&why))
        throw input_error("stree_from_spanning_tree: produced an invalid S-tree: " + why);
    return out;
}

std::set<Vertex> star_part(const std::vector<OrientedSeparation>& sigma,
                           const std::set<Vertex>& ground) {
    if (!sigma.empty() && !is_star(sigma))
        throw input_error("star_part: input is not a star");
    std::set<Vertex> part = ground;
    for (const OrientedSeparation& s : sigma) {
        std::set<Vertex> next;
        std::set_intersection(part.begin(), part.end(), s.side_b.begin(), s.side_b.end(),
                              std::inserter(next, next.begin()));
        part = std::move(next);
    }
    return part;
}

namespace {

// Grow `tree_vertices` (a connected set in g[inside]) until it contains all of
// `targets`, walking shortest lexicographic paths. Returns false if some
// target is unreachable inside the allowed set.
bool grow_tree(const MultiGraph& g, const std::set<Vertex>& inside, std::set<Vertex>& tree_vertices,
               const std::set<Vertex>& targets) {
    MultiGraph arena = induced(g, inside);
    for (const Vertex& q : targets) {
        if (tree_vertices.count(q))
            continue;
        if (tree_vertices.empty()) {
            tree_vertices.insert(q);
            continue;
        }
        std::vector<Vertex> path = shortest_path_avoiding(arena, {q}, tree_vertices, {});
        if (path.empty())
            return false;
        tree_vertices.insert(path.begin(), path.end());
    }
    return true;
}

} // namespace

SubstarResult connected_substar(const MultiGraph& g, const std::vector<OrientedSeparation>& sigma,
                                std::size_t i_star, std::size_t target) {
    if (i_star >= sigma.size())
        throw input_error("connected_substar: i_star out of range");
    if (!is_star(sigma))
        throw input_error("connected_substar: sigma is not a star");
    for (const OrientedSeparation& s : sigma) {
        if (!s.is_bipartition() || s.ground() != g.vertices())
            throw input_error("connected_substar: members must be bipartitions of V(g)");
        if (!is_connected(induced(g, s.side_a)) || !is_connected(induced(g, s.side_b)))
            throw input_error("connected_substar: members must be bond-induced");
    }
    if (!is_connected(g))
        throw input_error("connected_substar: graph must be connected");

    SubstarResult out;
    out.indices.push_back(i_star);
    std::set<Vertex> part = sigma[i_star].side_b;

    // T_0: a tree in g[B_{i_star}] containing ∂B_{i_star}.
    std::set<Vertex> tree_vertices;
    if (!grow_tree(g, part, tree_vertices, boundary(g, part)))
        throw input_error("connected_substar: bond side is not connected"); // unreachable for bonds

    for (std::size_t j = 0; j < sigma.size(); ++j) {
        if (j == i_star)
            continue;
        const OrientedSeparation& cand = sigma[j];
        bool touches_tree = false;
        for (const Vertex& v : cand.side_a)
            if (tree_vertices.count(v)) {
                touches_tree = true;
                break;
            }
        if (touches_tree)
            continue;
        // Admit: shrink the part and extend the tree to the new boundary,
        // all inside the shrunken part.
        std::set<Vertex> next_part;
        std::set_intersection(part.begin(), part.end(), cand.side_b.begin(), cand.side_b.end(),
                              std::inserter(next_part, next_part.begin()));
        std::set<Vertex> tentative_tree = tree_vertices;
        if (!grow_tree(g, next_part, tentative_tree, boundary(g, cand.side_b)))
            continue; // cannot host the new boundary; skip this candidate
        part = std::move(next_part);
        tree_vertices = std::move(tentative_tree);
        out.indices.push_back(j);
    }
    std::sort(out.indices.begin(), out.indices.end());
    out.part = part;
    out.reached_target = out.indices.size() >= target;
    return out;
}

STree restrict_stree(const STree& s, const std::set<Vertex>& keep) {
    MultiGraph sub = induced(s.tree, keep);
    if (!is_tree(sub))
        throw input_error("restrict_stree: kept vertices do not induce a subtree");
    STree out;
    out.tree = sub;
    for (const auto& [e, m] : sub.edges()) {
        out.alpha[{e.first, e.second}] = s.alpha.at({e.first, e.second});
        out.alpha[{e.second, e.first}] = s.alpha.at({e.second, e.first});
    }
    std::string why;
    if (!out.validate(&why))
        throw input_error("restrict_stree: restriction is not a valid S-tree: " + why);
    return out;
}

} // namespace fareyforge
