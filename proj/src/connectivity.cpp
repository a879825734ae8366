#include "fareyforge/connectivity.hpp"

#include <algorithm>

#include "fareyforge/flow.hpp"

namespace fareyforge {

namespace {

struct IndexedGraph {
    std::vector<Vertex> tokens; // sorted
    std::map<Vertex, int> index;

    explicit IndexedGraph(const MultiGraph& g) {
        tokens.assign(g.vertices().begin(), g.vertices().end());
        for (int i = 0; i < static_cast<int>(tokens.size()); ++i)
            index[tokens[i]] = i;
    }
};

FlowNetwork edge_flow_network(const MultiGraph& g, const IndexedGraph& ix) {
    FlowNetwork net(static_cast<int>(ix.tokens.size()));
    for (const auto& [e, m] : g.edges())
        net.add_edge(ix.index.at(e.first), ix.index.at(e.second), m);
    return net;
}

} // namespace

int lambda_pair(const MultiGraph& g, const Vertex& u, const Vertex& v) {
    if (u == v)
        throw input_error("lambda_pair: identical endpoints '" + u + "'");
    if (!g.has_vertex(u) || !g.has_vertex(v))
        throw input_error("lambda_pair: unknown endpoint");
    IndexedGraph ix(g);
    FlowNetwork net = edge_flow_network(g, ix);
    long long f = net.max_flow(ix.index.at(u), ix.index.at(v));
    return static_cast<int>(f);
}

int lambda_global(const MultiGraph& g) {
    if (g.vertex_count() <= 1)
        return lambda_infinite;
    if (!is_connected(g))
        return 0;
    const Vertex& s = *g.vertices().begin();
    int best = lambda_infinite;
    for (const Vertex& t : g.vertices()) {
        if (t == s)
            continue;
        best = std::min(best, lambda_pair(g, s, t));
    }
    return best;
}

std::vector<std::vector<Vertex>> edge_disjoint_paths(const MultiGraph& g, const Vertex& u,
                                                     const Vertex& v, int want) {
    if (u == v)
        throw input_error("edge_disjoint_paths: identical endpoints '" + u + "'");
    if (want <= 0)
        return {};
    IndexedGraph ix(g);
    FlowNetwork net = edge_flow_network(g, ix);
    int s = ix.index.at(u), t = ix.index.at(v);
    long long value = net.max_flow(s, t, want);

    // Decompose the integral flow: per distinct edge, the net flow defines a
    // directed multigraph with balanced interior degrees; repeatedly walk from
    // u choosing the least-token outgoing arc.
    int n = static_cast<int>(ix.tokens.size());
    std::vector<std::map<int, long long>> out(n); // ordered by target index = token order
    {
        int arc = 0;
        for (const auto& [e, m] : g.edges()) {
            (void)m;
            int a = ix.index.at(e.first), b = ix.index.at(e.second);
            long long f = net.flow_on(arc * 2); // forward arc a->b
            if (f > 0)
                out[a][b] += f;
            else if (f < 0)
                out[b][a] += -f;
            ++arc;
        }
    }
    std::vector<std::vector<Vertex>> paths;
    for (long long i = 0; i < value; ++i) {
        // Walk consuming flow units; erase any circulation the walk runs into
        // so the extracted witness is a simple path.
        std::vector<int> walk{s};
        std::map<int, std::size_t> position{{s, 0}};
        int at = s;
        while (at != t) {
            auto it = out[at].begin();
            int next = it->first;
            if (--it->second == 0)
                out[at].erase(it);
            auto back = position.find(next);
            if (back != position.end()) {
                while (walk.size() > back->second + 1) {
                    position.erase(walk.back());
                    walk.pop_back();
                }
            } else {
                walk.push_back(next);
                position[next] = walk.size() - 1;
            }
            at = next;
        }
        std::vector<Vertex> path;
        for (int v : walk)
            path.push_back(ix.tokens[v]);
        paths.push_back(std::move(path));
    }
    return paths;
}

std::vector<Cut> enumerate_bonds(const MultiGraph& g, int max_size, std::size_t vertex_cap) {
    if (!is_connected(g))
        throw input_error("enumerate_bonds: graph must be connected");
    std::size_t n = g.vertex_count();
    if (n > vertex_cap)
        throw resource_error("enumerate_bonds: " + std::to_string(n) + " vertices exceed cap " +
                             std::to_string(vertex_cap));
    if (n < 2)
        return {};

    std::vector<Vertex> tokens(g.vertices().begin(), g.vertices().end());
    std::map<Vertex, int> index;
    for (std::size_t i = 0; i < n; ++i)
        index[tokens[i]] = static_cast<int>(i);
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [e, m] : g.edges()) {
        adj[index[e.first]] |= 1u << index[e.second];
        adj[index[e.second]] |= 1u << index[e.first];
    }
    auto mask_connected = [&](std::uint32_t mask) {
        if (mask == 0)
            return false;
        std::uint32_t start = mask & (~mask + 1);
        std::uint32_t seen = start, frontier = start;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f;) {
                int v = __builtin_ctz(f);
                f &= f - 1;
                next |= adj[v] & mask & ~seen;
            }
            seen |= next;
            frontier = next;
        }
        return seen == mask;
    };

    std::vector<Cut> bonds;
    std::uint32_t full = n == 32 ? 0xffffffffu : (1u << n) - 1;
    // Canonical orientation: side A contains vertex 0 (the least token).
    for (std::uint32_t rest = 0; rest < (1u << (n - 1)); ++rest) {
        std::uint32_t a_mask = (rest << 1) | 1u;
        std::uint32_t b_mask = full & ~a_mask;
        if (b_mask == 0)
            continue;
        if (!mask_connected(a_mask) || !mask_connected(b_mask))
            continue;
        Cut cut;
        int crossing = 0;
        for (const auto& [e, m] : g.edges()) {
            bool a_in = (a_mask >> index[e.first]) & 1;
            bool b_in = (a_mask >> index[e.second]) & 1;
            if (a_in != b_in) {
                crossing += m;
                for (int i = 0; i < m; ++i)
                    cut.crossing.push_back(e);
            }
        }
        if (crossing > max_size)
            continue;
        for (std::size_t i = 0; i < n; ++i)
            ((a_mask >> i) & 1 ? cut.side_a : cut.side_b).insert(tokens[i]);
        bonds.push_back(std::move(cut));
    }
    std::sort(bonds.begin(), bonds.end(), [](const Cut& x, const Cut& y) {
        if (x.crossing.size() != y.crossing.size())
            return x.crossing.size() < y.crossing.size();
        return x.side_a < y.side_a;
    });
    return bonds;
}

KClassPartition k_classes(const MultiGraph& g, int k) {
    if (k < 1)
        throw input_error("k_classes: k must be >= 1");
    std::vector<Vertex> tokens(g.vertices().begin(), g.vertices().end());
    std::map<Vertex, int> cls;
    int next_class = 0;
    for (const Vertex& v : tokens)
        cls[v] = next_class++;
    // λ(x,z) >= min(λ(x,y), λ(y,z)) makes this an equivalence, so pairwise
    // merging is sound in any order.
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (std::size_t j = i + 1; j < tokens.size(); ++j) {
            if (cls[tokens[i]] == cls[tokens[j]])
                continue;
            if (lambda_pair(g, tokens[i], tokens[j]) >= k) {
                int from = cls[tokens[j]], to = cls[tokens[i]];
                for (auto& [v, c] : cls)
                    if (c == from)
                        c = to;
            }
        }
    }
    std::map<int, std::set<Vertex>> grouped;
    for (const auto& [v, c] : cls)
        grouped[c].insert(v);
    KClassPartition out;
    out.k = k;
    for (auto& [c, members] : grouped)
        out.classes.push_back(std::move(members));
    std::sort(out.classes.begin(), out.classes.end(),
              [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    return out;
}

MultiGraph quotient_by_classes(const MultiGraph& g, const KClassPartition& p) {
    return contract_sets(g, p.classes);
}

bool order_compatible(const std::vector<Vertex>& p, const std::vector<Vertex>& q) {
    if (p.empty() || q.empty())
        throw input_error("order_compatible: empty path");
    if (p.front() != q.front() || p.back() != q.back())
        throw input_error("order_compatible: endpoint mismatch");
    std::set<Vertex> in_p(p.begin(), p.end());
    std::set<Vertex> in_q(q.begin(), q.end());
    std::vector<Vertex> along_p, along_q;
    for (const Vertex& v : p)
        if (in_q.count(v))
            along_p.push_back(v);
    for (const Vertex& v : q)
        if (in_p.count(v))
            along_q.push_back(v);
    return along_p == along_q;
}

} // namespace fareyforge
