#include "support/builders.hpp"

#include <algorithm>

namespace fareyforge::testing {

MultiGraph complete_graph(int n, const std::string& prefix) {
    MultiGraph g;
    std::vector<Vertex> vs;
    for (int i = 1; i <= n; ++i) {
        std::string suffix = std::to_string(i);
        if (n >= 10 && suffix.size() < 2)
            suffix = "0" + suffix;
        vs.push_back(prefix + suffix);
        g.add_vertex(vs.back());
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            g.add_edge(vs[i], vs[j]);
    return g;
}

MultiGraph path_graph(const std::vector<Vertex>& vs) {
    MultiGraph g;
    for (const Vertex& v : vs)
        g.add_vertex(v);
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        g.add_edge(vs[i], vs[i + 1]);
    return g;
}

MultiGraph cycle_graph(const std::vector<Vertex>& vs) {
    MultiGraph g = path_graph(vs);
    if (vs.size() >= 3)
        g.add_edge(vs.back(), vs.front());
    return g;
}

MultiGraph complete_bipartite(int left, int right) {
    MultiGraph g;
    for (int i = 1; i <= left; ++i)
        g.add_vertex("x" + std::to_string(i));
    for (int j = 1; j <= right; ++j)
        g.add_vertex("y" + std::to_string(j));
    for (int i = 1; i <= left; ++i)
        for (int j = 1; j <= right; ++j)
            g.add_edge("x" + std::to_string(i), "y" + std::to_string(j));
    return g;
}

MultiGraph random_multigraph(std::mt19937_64& rng, int max_vertices, int max_multiplicity,
                             bool force_connected) {
    int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vertices - 1));
    MultiGraph g;
    std::vector<Vertex> vs;
    for (int i = 0; i < n; ++i) {
        std::string suffix = std::to_string(i);
        if (suffix.size() < 2)
            suffix = "0" + suffix;
        vs.push_back("v" + suffix);
        g.add_vertex(vs.back());
    }
    if (force_connected) {
        // random spanning tree first
        for (int i = 1; i < n; ++i)
            g.add_edge(vs[i], vs[rng() % i]);
    }
    int extra = static_cast<int>(rng() % static_cast<std::uint64_t>(2 * n + 1));
    for (int i = 0; i < extra; ++i) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a == b)
            continue;
        int mult = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_multiplicity));
        if (g.multiplicity(vs[a], vs[b]) + mult <= max_multiplicity)
            g.add_edge(vs[a], vs[b], mult);
    }
    return g;
}

std::vector<std::set<Vertex>> random_disjoint_parts(std::mt19937_64& rng, const MultiGraph& g) {
    std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
    std::shuffle(vs.begin(), vs.end(), rng);
    std::vector<std::set<Vertex>> parts;
    std::size_t at = 0;
    while (at < vs.size()) {
        std::size_t len = 1 + rng() % 3;
        if (rng() % 2 == 0) { // leave some vertices uncovered
            ++at;
            continue;
        }
        std::set<Vertex> part;
        for (std::size_t i = 0; i < len && at < vs.size(); ++i)
            part.insert(vs[at++]);
        if (part.size() >= 2)
            parts.push_back(std::move(part));
    }
    return parts;
}

namespace {

// Mirror of contract_sets naming so builders can predict quotient tokens.
std::map<Vertex, Vertex> quotient_names(const MultiGraph& g,
                                        const std::vector<std::set<Vertex>>& parts) {
    std::set<Vertex> covered;
    for (const auto& p : parts)
        covered.insert(p.begin(), p.end());
    std::set<Vertex> taken;
    for (const Vertex& v : g.vertices())
        if (!covered.count(v))
            taken.insert(v);
    std::map<Vertex, Vertex> out;
    for (const auto& p : parts) {
        Vertex name = contracted_name(p, taken);
        taken.insert(name);
        for (const Vertex& v : p)
            out[v] = name;
    }
    return out;
}

} // namespace

MinorMap random_minor_map(std::mt19937_64& rng, const MultiGraph& g) {
    // Keep a random induced subgraph, then contract random connected blobs.
    std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
    std::set<Vertex> keep;
    for (const Vertex& v : vs)
        if (rng() % 5 != 0)
            keep.insert(v);
    if (keep.empty())
        keep.insert(vs[rng() % vs.size()]);
    MultiGraph sub = induced(g, keep);

    std::vector<Vertex> pool(keep.begin(), keep.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    std::set<Vertex> assigned;
    std::vector<std::set<Vertex>> blobs;
    for (const Vertex& v : pool) {
        if (assigned.count(v))
            continue;
        std::set<Vertex> blob{v};
        assigned.insert(v);
        while (rng() % 2 == 0) {
            std::vector<Vertex> frontier;
            for (const Vertex& b : blob)
                for (const Vertex& w : sub.neighbors(b))
                    if (!assigned.count(w))
                        frontier.push_back(w);
            if (frontier.empty())
                break;
            std::sort(frontier.begin(), frontier.end());
            frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
            const Vertex& grow = frontier[rng() % frontier.size()];
            blob.insert(grow);
            assigned.insert(grow);
        }
        blobs.push_back(std::move(blob));
    }
    auto names = quotient_names(sub, blobs);
    MinorMap m;
    m.host = g;
    m.pattern = contract_sets(sub, blobs);
    for (const Vertex& v : keep)
        m.assign[v] = names.at(v);
    return m;
}

ModelChain random_chain(std::mt19937_64& rng, const MultiGraph& g, int max_maps) {
    ModelChain chain;
    chain.graphs.push_back(g);

    // Initial kept subgraph: one random vertex (plus one edge when available).
    std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
    MultiGraph kept;
    const Vertex& seed = vs[rng() % vs.size()];
    kept.add_vertex(seed);
    for (const Vertex& w : g.neighbors(seed)) {
        if (rng() % 2 == 0) {
            kept.add_vertex(w);
            kept.add_edge(seed, w);
            break;
        }
    }
    chain.kept.push_back(kept);

    int steps = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_maps));
    for (int s = 0; s < steps; ++s) {
        const MultiGraph& cur = chain.graphs.back();
        const MultiGraph& cur_kept = chain.kept.back();

        // Drop some vertices (never kept ones), then contract blobs that
        // avoid the kept vertices so kept tokens survive unchanged.
        std::set<Vertex> keep;
        for (const Vertex& v : cur.vertices())
            if (cur_kept.has_vertex(v) || rng() % 4 != 0)
                keep.insert(v);
        MultiGraph sub = induced(cur, keep);

        std::vector<Vertex> pool;
        for (const Vertex& v : keep)
            if (!cur_kept.has_vertex(v))
                pool.push_back(v);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::set<Vertex> assigned(cur_kept.vertices().begin(), cur_kept.vertices().end());
        std::vector<std::set<Vertex>> blobs;
        for (const Vertex& v : pool) {
            if (assigned.count(v))
                continue;
            std::set<Vertex> blob{v};
            assigned.insert(v);
            while (rng() % 3 == 0) {
                std::vector<Vertex> frontier;
                for (const Vertex& b : blob)
                    for (const Vertex& w : sub.neighbors(b))
                        if (!assigned.count(w))
                            frontier.push_back(w);
                if (frontier.empty())
                    break;
                std::sort(frontier.begin(), frontier.end());
                frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
                const Vertex& grow = frontier[rng() % frontier.size()];
                blob.insert(grow);
                assigned.insert(grow);
            }
            blobs.push_back(std::move(blob));
        }
        for (const Vertex& v : cur_kept.vertices())
            blobs.push_back({v}); // kept vertices stay singleton and keep their name

        auto names = quotient_names(sub, blobs);
        MinorMap m;
        m.host = cur;
        m.pattern = contract_sets(sub, blobs);
        for (const Vertex& v : keep)
            m.assign[v] = names.at(v);
        chain.maps.push_back(m);
        chain.graphs.push_back(m.pattern);

        // Occasionally grow the kept subgraph inside the new stage.
        MultiGraph next_kept = cur_kept;
        for (const Vertex& v : m.pattern.vertices()) {
            if (next_kept.has_vertex(v) || rng() % 3 != 0)
                continue;
            next_kept.add_vertex(v);
            for (const Vertex& w : next_kept.vertices())
                if (w != v && m.pattern.has_edge(v, w) && rng() % 2 == 0)
                    next_kept.add_edge(v, w, 1);
            break;
        }
        chain.kept.push_back(next_kept);
    }
    return chain;
}

MultiGraph barbell_k5() {
    MultiGraph g;
    std::vector<Vertex> a{"a1", "a2", "a3", "s1", "s2"};
    std::vector<Vertex> b{"b1", "b2", "b3", "s1", "s2"};
    for (const Vertex& v : a)
        g.add_vertex(v);
    for (const Vertex& v : b)
        g.add_vertex(v);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            g.add_edge(a[i], a[j]);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (!g.has_edge(b[i], b[j]))
                g.add_edge(b[i], b[j]);
    return g;
}

MultiGraph twin_clique_with_bypass() {
    MultiGraph g;
    auto blob = [&](const std::string& prefix) {
        std::vector<Vertex> vs;
        for (int i = 1; i <= 12; ++i) {
            std::string suffix = std::to_string(i);
            if (suffix.size() < 2)
                suffix = "0" + suffix;
            vs.push_back(prefix + suffix);
            g.add_vertex(vs.back());
        }
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                g.add_edge(vs[i], vs[j]);
        return vs;
    };
    auto a = blob("a");
    auto b = blob("b");
    auto d = blob("d");
    g.add_vertex("s1");
    g.add_vertex("s2");
    for (const Vertex& v : a)
        g.add_edge("s1", v);
    for (const Vertex& v : b)
        g.add_edge("s2", v);
    for (int i = 0; i < 3; ++i) {
        g.add_edge("s1", b[i]);
        g.add_edge("s2", a[i]);
    }
    for (const Vertex& v : d) {
        g.add_edge("s1", v);
        g.add_edge("s2", v);
    }
    return g;
}

} // namespace fareyforge::testing
