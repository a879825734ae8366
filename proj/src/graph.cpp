#include "fareyforge/graph.hpp"

#include <algorithm>
#include <deque>

namespace fareyforge {

void MultiGraph::add_vertex(const Vertex& v) {
    if (v.empty())
        throw input_error("vertex token must be nonempty");
    vertices_.insert(v);
}

void MultiGraph::add_edge(const Vertex& a, const Vertex& b, int multiplicity) {
    if (multiplicity <= 0)
        throw input_error("edge multiplicity must be positive");
    if (a == b)
        throw input_error("loop edge {" + a + "," + b + "} rejected");
    if (!has_vertex(a))
        throw input_error("unknown vertex '" + a + "'");
    if (!has_vertex(b))
        throw input_error("unknown vertex '" + b + "'");
    edges_[edge_key(a, b)] += multiplicity;
}

void MultiGraph::remove_edge(const Vertex& a, const Vertex& b, int multiplicity) {
    auto it = edges_.find(edge_key(a, b));
    if (it == edges_.end())
        return;
    it->second -= multiplicity;
    if (it->second <= 0)
        edges_.erase(it);
}

int MultiGraph::multiplicity(const Vertex& a, const Vertex& b) const {
    auto it = edges_.find(edge_key(a, b));
    return it == edges_.end() ? 0 : it->second;
}

std::vector<Vertex> MultiGraph::neighbors(const Vertex& v) const {
    std::vector<Vertex> out;
    for (const auto& [e, m] : edges_) {
        if (e.first == v)
            out.push_back(e.second);
        else if (e.second == v)
            out.push_back(e.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int MultiGraph::degree(const Vertex& v) const {
    int d = 0;
    for (const auto& [e, m] : edges_)
        if (e.first == v || e.second == v)
            d += m;
    return d;
}

std::size_t MultiGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& [e, m] : edges_)
        n += static_cast<std::size_t>(m);
    return n;
}

bool MultiGraph::is_simple() const {
    for (const auto& [e, m] : edges_)
        if (m != 1)
            return false;
    return true;
}

std::set<Vertex> boundary(const MultiGraph& g, const std::set<Vertex>& x) {
    for (const Vertex& v : x)
        if (!g.has_vertex(v))
            throw input_error("boundary: unknown vertex '" + v + "'");
    std::set<Vertex> out;
    for (const auto& [e, m] : g.edges()) {
        bool a_in = x.count(e.first) > 0;
        bool b_in = x.count(e.second) > 0;
        if (a_in && !b_in)
            out.insert(e.first);
        else if (b_in && !a_in)
            out.insert(e.second);
    }
    return out;
}

Vertex contracted_name(const std::set<Vertex>& part, const std::set<Vertex>& taken) {
    std::string name;
    for (const Vertex& v : part) {
        if (!name.empty())
            name += '+';
        name += v;
    }
    while (taken.count(name) > 0)
        name += '\'';
    return name;
}

MultiGraph contract_sets(const MultiGraph& g, const std::vector<std::set<Vertex>>& parts) {
    std::map<Vertex, std::size_t> owner;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].empty())
            throw input_error("contract_sets: empty part");
        for (const Vertex& v : parts[i]) {
            if (!g.has_vertex(v))
                throw input_error("contract_sets: unknown vertex '" + v + "'");
            if (!owner.emplace(v, i).second)
                throw input_error("contract_sets: parts overlap at '" + v + "'");
        }
    }

    // Survivor tokens: uncovered vertices keep their name, each part gets a
    // canonical merged name that avoids every other survivor.
    std::set<Vertex> taken;
    for (const Vertex& v : g.vertices())
        if (!owner.count(v))
            taken.insert(v);
    std::vector<Vertex> part_name(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        part_name[i] = contracted_name(parts[i], taken);
        taken.insert(part_name[i]);
    }

    auto target = [&](const Vertex& v) -> const Vertex& {
        auto it = owner.find(v);
        return it == owner.end() ? v : part_name[it->second];
    };

    MultiGraph out;
    for (const Vertex& v : g.vertices())
        if (!owner.count(v))
            out.add_vertex(v);
    for (const Vertex& name : part_name)
        out.add_vertex(name);
    for (const auto& [e, m] : g.edges()) {
        const Vertex& a = target(e.first);
        const Vertex& b = target(e.second);
        if (a == b)
            continue; // edge inside one part: dropped
        out.add_edge(a, b, m);
    }
    return out;
}

MultiGraph induced(const MultiGraph& g, const std::set<Vertex>& x) {
    MultiGraph out;
    for (const Vertex& v : x) {
        if (!g.has_vertex(v))
            throw input_error("induced: unknown vertex '" + v + "'");
        out.add_vertex(v);
    }
    for (const auto& [e, m] : g.edges())
        if (x.count(e.first) && x.count(e.second))
            out.add_edge(e.first, e.second, m);
    return out;
}

MultiGraph graph_union(const MultiGraph& a, const MultiGraph& b) {
    MultiGraph out = a;
    for (const Vertex& v : b.vertices())
        out.add_vertex(v);
    for (const auto& [e, m] : b.edges()) {
        int have = out.multiplicity(e.first, e.second);
        if (m > have)
            out.add_edge(e.first, e.second, m - have);
    }
    return out;
}

MultiGraph simple_view(const MultiGraph& g) {
    MultiGraph out;
    for (const Vertex& v : g.vertices())
        out.add_vertex(v);
    for (const auto& [e, m] : g.edges())
        out.add_edge(e.first, e.second, 1);
    return out;
}

std::vector<std::set<Vertex>> components(const MultiGraph& g) {
    std::set<Vertex> seen;
    std::vector<std::set<Vertex>> out;
    for (const Vertex& start : g.vertices()) {
        if (seen.count(start))
            continue;
        std::set<Vertex> comp;
        std::deque<Vertex> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            comp.insert(v);
            for (const Vertex& w : g.neighbors(v))
                if (seen.insert(w).second)
                    queue.push_back(w);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

std::set<Vertex> component_of(const MultiGraph& g, const Vertex& v) {
    if (!g.has_vertex(v))
        throw input_error("component_of: unknown vertex '" + v + "'");
    std::set<Vertex> comp{v};
    std::deque<Vertex> queue{v};
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (const Vertex& w : g.neighbors(u))
            if (comp.insert(w).second)
                queue.push_back(w);
    }
    return comp;
}

bool is_connected(const MultiGraph& g) {
    if (g.vertex_count() <= 1)
        return true;
    return component_of(g, *g.vertices().begin()).size() == g.vertex_count();
}

bool is_forest(const MultiGraph& g) {
    if (!g.is_simple())
        return false;
    std::size_t verts = 0;
    for (const auto& comp : components(g))
        verts += comp.size();
    return g.distinct_edge_count() + components(g).size() == verts;
}

bool is_tree(const MultiGraph& g) {
    return g.vertex_count() >= 1 && is_connected(g) &&
           g.edge_count() == g.vertex_count() - 1;
}

std::vector<Vertex> shortest_path(const MultiGraph& g, const Vertex& from, const Vertex& to) {
    return shortest_path_avoiding(g, {from}, {to}, {});
}

std::vector<Vertex> shortest_path_avoiding(const MultiGraph& g, const std::set<Vertex>& from,
                                           const std::set<Vertex>& to,
                                           const std::set<EdgeKey>& forbidden_edges) {
    for (const Vertex& v : from)
        if (!g.has_vertex(v))
            throw input_error("shortest_path: unknown vertex '" + v + "'");
    std::map<Vertex, Vertex> pred;
    std::set<Vertex> seen(from.begin(), from.end());
    std::deque<Vertex> queue(from.begin(), from.end());
    Vertex hit;
    for (const Vertex& v : from)
        if (to.count(v))
            return {v};
    while (!queue.empty() && hit.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (const Vertex& w : g.neighbors(v)) {
            if (forbidden_edges.count(edge_key(v, w)))
                continue;
            if (!seen.insert(w).second)
                continue;
            pred[w] = v;
            if (to.count(w)) {
                hit = w;
                break;
            }
            queue.push_back(w);
        }
    }
    if (hit.empty())
        return {};
    std::vector<Vertex> path{hit};
    while (!from.count(path.back()))
        path.push_back(pred.at(path.back()));
    std::reverse(path.begin(), path.end());
    return path;
}

void ColoredGraph::check() const {
    if (!graph.is_simple())
        throw input_error("colored graph must be simple");
    for (const auto& [e, m] : graph.edges())
        if (!colors.count(e))
            throw input_error("edge {" + e.first + "," + e.second + "} has no color");
    for (const auto& [e, c] : colors)
        if (!graph.has_edge(e.first, e.second))
            throw input_error("color on missing edge {" + e.first + "," + e.second + "}");
}

} // namespace fareyforge
