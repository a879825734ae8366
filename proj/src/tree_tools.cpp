#include "fareyforge/tree_tools.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "fareyforge/errors.hpp"
#include "fareyforge/flow.hpp"

namespace fareyforge {

using nlohmann::json;

std::set<Vertex> RootedTree::nodes() const {
    std::set<Vertex> out{root};
    for (const auto& [c, p] : parent) {
        out.insert(c);
        out.insert(p);
    }
    return out;
}

std::map<Vertex, std::vector<Vertex>> RootedTree::children() const {
    std::map<Vertex, std::vector<Vertex>> out;
    for (const Vertex& v : nodes())
        out[v];
    for (const auto& [c, p] : parent)
        out[p].push_back(c); // map iteration keeps child lists sorted
    return out;
}

void RootedTree::check() const {
    if (root.empty())
        throw input_error("rooted tree has no root");
    if (parent.count(root))
        throw input_error("root '" + root + "' must not have a parent");
    for (const auto& [c, p] : parent) {
        // Walk to the root; a cycle revisits c.
        std::set<Vertex> seen{c};
        Vertex at = c;
        while (at != root) {
            auto it = parent.find(at);
            if (it == parent.end())
                throw input_error("node '" + at + "' does not reach the root");
            at = it->second;
            if (!seen.insert(at).second)
                throw input_error("parent links contain a cycle through '" + at + "'");
        }
    }
}

bool RootedTree::is_ancestor(const Vertex& above, const Vertex& below) const {
    Vertex at = below;
    while (true) {
        if (at == above)
            return true;
        auto it = parent.find(at);
        if (it == parent.end())
            return false;
        at = it->second;
    }
}

RootedTree read_rooted_tree(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw parse_error(std::string("rooted-tree document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "fareyforge-rtree-v1")
        throw parse_error("rooted-tree document missing \"format\":\"fareyforge-rtree-v1\"");
    if (!doc.contains("root") || !doc["root"].is_string())
        throw parse_error("rooted-tree document missing \"root\"");
    RootedTree t;
    t.root = doc["root"].get<std::string>();
    if (doc.contains("parent")) {
        if (!doc["parent"].is_object())
            throw parse_error("\"parent\" must be an object");
        for (const auto& [c, p] : doc["parent"].items()) {
            if (!p.is_string())
                throw parse_error("parent of '" + c + "' is not a string");
            t.parent[c] = p.get<std::string>();
        }
    }
    try {
        t.check();
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
    return t;
}

std::string write_rooted_tree(const RootedTree& t) {
    json doc;
    doc["format"] = "fareyforge-rtree-v1";
    doc["root"] = t.root;
    doc["parent"] = json::object();
    for (const auto& [c, p] : t.parent)
        doc["parent"][c] = p;
    return doc.dump(2) + "\n";
}

PruneResult prune_labels(const RootedTree& t) {
    t.check();
    auto kids = t.children();
    PruneResult out;
    std::set<Vertex> alive = t.nodes();
    int round = 0;
    while (!alive.empty()) {
        // A node's surviving up-closure is a chain iff every surviving
        // descendant (itself included) has at most one surviving child.
        std::map<Vertex, int> alive_kids;
        for (const Vertex& v : alive) {
            int c = 0;
            for (const Vertex& w : kids[v])
                if (alive.count(w))
                    ++c;
            alive_kids[v] = c;
        }
        std::map<Vertex, bool> chain;
        std::function<bool(const Vertex&)> is_chain = [&](const Vertex& v) -> bool {
            auto memo = chain.find(v);
            if (memo != chain.end())
                return memo->second;
            bool ok = alive_kids[v] <= 1;
            for (const Vertex& w : kids[v])
                if (alive.count(w) && !is_chain(w))
                    ok = false;
            chain[v] = ok;
            return ok;
        };
        std::vector<Vertex> labelled;
        for (const Vertex& v : alive)
            if (is_chain(v))
                labelled.push_back(v);
        // Finite trees always label at least the deepest leaves.
        for (const Vertex& v : labelled) {
            out.label[v] = round;
            alive.erase(v);
        }
        ++round;
    }
    out.rounds = round;
    return out;
}

int branch_order(const RootedTree& t) {
    t.check();
    auto kids = t.children();
    std::function<int(const Vertex&)> order = [&](const Vertex& v) -> int {
        int best = -1, attained = 0;
        for (const Vertex& w : kids[v]) {
            int o = order(w);
            if (o > best) {
                best = o;
                attained = 1;
            } else if (o == best) {
                ++attained;
            }
        }
        if (best < 0)
            return 0; // leaf
        return attained >= 2 ? best + 1 : best;
    };
    return order(t.root);
}

std::optional<SubdivisionWitness> contains_binary_subdivision(const RootedTree& t, int height) {
    t.check();
    if (height < 0)
        throw input_error("contains_binary_subdivision: height must be >= 0");
    auto kids = t.children();

    std::map<Vertex, int> best; // order of the subtree below each node
    std::function<int(const Vertex&)> compute = [&](const Vertex& v) -> int {
        int top = -1, attained = 0;
        for (const Vertex& w : kids[v]) {
            int o = compute(w);
            if (o > top) {
                top = o;
                attained = 1;
            } else if (o == top) {
                ++attained;
            }
        }
        int mine = top < 0 ? 0 : (attained >= 2 ? top + 1 : top);
        best[v] = mine;
        return mine;
    };
    compute(t.root);
    if (best[t.root] < height)
        return std::nullopt;

    SubdivisionWitness w;
    w.height = height;
    // Descend to the shallowest branch node that still supports height h and
    // recurse into two children attaining h-1.
    std::function<void(const Vertex&, int, int)> place = [&](const Vertex& v, int h, int pos) {
        if (h == 0) {
            w.node_at[pos] = v;
            return;
        }
        Vertex at = v;
        while (true) {
            std::vector<Vertex> strong;
            for (const Vertex& c : kids[at])
                if (best[c] >= h - 1)
                    strong.push_back(c);
            if (strong.size() >= 2) {
                w.node_at[pos] = at;
                place(strong[0], h - 1, 2 * pos);
                place(strong[1], h - 1, 2 * pos + 1);
                return;
            }
            // Exactly one child can carry order >= h here; follow it.
            Vertex next;
            for (const Vertex& c : kids[at])
                if (best[c] >= h) {
                    next = c;
                    break;
                }
            at = next;
        }
    };
    place(t.root, height, 1);
    return w;
}

// --- star-comb search -------------------------------------------------------

namespace {

struct Indexed {
    std::vector<Vertex> tokens;
    std::map<Vertex, int> index;

    explicit Indexed(const MultiGraph& g) {
        tokens.assign(g.vertices().begin(), g.vertices().end());
        for (int i = 0; i < static_cast<int>(tokens.size()); ++i)
            index[tokens[i]] = i;
    }
};

// Vertex-disjoint paths (apart from shared sources) extracted from a
// node-split unit-capacity flow. Arcs are tagged so the decomposition can
// rebuild vertex sequences.
struct DisjointPathSearch {
    const MultiGraph& g;
    const Indexed& ix;
    int n;

    DisjointPathSearch(const MultiGraph& g_, const Indexed& ix_)
        : g(g_), ix(ix_), n(static_cast<int>(ix_.tokens.size())) {}

    int in_node(int v) const { return 2 + 2 * v; }
    int out_node(int v) const { return 2 + 2 * v + 1; }

    // Builds the star/comb teeth network: each source gets `source_cap` units
    // from the super-source (k for a star's shared center, 1 for spine
    // vertices), every other vertex is split with unit capacity, and U
    // vertices drain into the sink. A source in U may finish as a trivial
    // path when `allow_trivial`.
    struct Net {
        FlowNetwork flow;
        std::map<std::pair<int, int>, int> arc_of; // (from,to) node ids -> arc id
    };

    Net build(const std::set<Vertex>& sources, int source_cap, const std::set<Vertex>& u_set,
              bool allow_trivial) {
        Net net{FlowNetwork(2 + 2 * n), {}};
        const int S = 0, T = 1;
        auto arc = [&](int a, int b, int cap) { net.arc_of[{a, b}] = net.flow.add_arc(a, b, cap); };
        for (int v = 0; v < n; ++v) {
            const Vertex& tok = ix.tokens[v];
            if (sources.count(tok)) {
                arc(S, out_node(v), source_cap);
                if (allow_trivial && u_set.count(tok))
                    arc(out_node(v), T, 1);
            } else {
                arc(in_node(v), out_node(v), 1);
                if (u_set.count(tok))
                    arc(out_node(v), T, 1);
            }
        }
        for (const auto& [e, m] : g.edges()) {
            int a = ix.index.at(e.first), b = ix.index.at(e.second);
            if (!sources.count(e.second))
                arc(out_node(a), in_node(b), 1);
            if (!sources.count(e.first))
                arc(out_node(b), in_node(a), 1);
        }
        return net;
    }

    int max_paths(const std::set<Vertex>& sources, int source_cap, const std::set<Vertex>& u_set,
                  bool allow_trivial) {
        Net net = build(sources, source_cap, u_set, allow_trivial);
        return static_cast<int>(net.flow.max_flow(0, 1));
    }

    std::vector<std::vector<Vertex>> paths(const std::set<Vertex>& sources, int source_cap,
                                           const std::set<Vertex>& u_set, int want,
                                           bool allow_trivial) {
        Net net = build(sources, source_cap, u_set, allow_trivial);
        const int S = 0, T = 1;
        long long flow = net.flow.max_flow(S, T, want);
        std::vector<std::vector<Vertex>> out;
        // Walk positive-flow arcs from each used source, once per flow unit.
        for (int v = 0; v < n && static_cast<long long>(out.size()) < flow; ++v) {
            if (!sources.count(ix.tokens[v]))
                continue;
            auto it = net.arc_of.find({S, out_node(v)});
            if (it == net.arc_of.end())
                continue;
            while (net.flow.flow_on(it->second) > 0) {
                net.flow.cancel_flow(it->second, 1);
                std::vector<Vertex> path{ix.tokens[v]};
                int at = out_node(v);
                while (at != T) {
                    int next_arc = -1, next_node = -1;
                    for (const auto& [key, id] : net.arc_of) {
                        if (key.first != at || net.flow.flow_on(id) <= 0)
                            continue;
                        next_arc = id;
                        next_node = key.second;
                        break; // arc_of is ordered, so this is the least target
                    }
                    net.flow.cancel_flow(next_arc, 1);
                    if (next_node == T)
                        break;
                    int vertex = (next_node - 2) / 2;
                    path.push_back(ix.tokens[vertex]);
                    net.flow.cancel_flow(net.arc_of.at({in_node(vertex), out_node(vertex)}), 1);
                    at = out_node(vertex);
                }
                out.push_back(std::move(path));
            }
        }
        return out;
    }
};

} // namespace

StarCombOutcome star_comb_search(const MultiGraph& g, const std::set<Vertex>& u_set, int k,
                                 std::uint64_t budget) {
    for (const Vertex& v : u_set)
        if (!g.has_vertex(v))
            throw input_error("star_comb_search: unknown vertex '" + v + "' in U");
    if (k < 1)
        throw input_error("star_comb_search: k must be >= 1");

    StarCombOutcome out;
    if (u_set.size() < static_cast<std::size_t>(k)) {
        out.exhausted_exactly = true; // both witness kinds need k distinct U vertices
        return out;
    }

    Indexed ix(g);
    DisjointPathSearch search(g, ix);

    // Stars first: a center with k vertex-disjoint nontrivial paths into U.
    for (const Vertex& center : g.vertices()) {
        ++out.nodes_visited;
        std::set<Vertex> target = u_set;
        target.erase(center);
        if (target.size() < static_cast<std::size_t>(k))
            continue;
        if (search.max_paths({center}, k, target, false) >= k) {
            StarWitness w;
            w.center = center;
            w.paths = search.paths({center}, k, target, k, false);
            out.star = std::move(w);
            return out;
        }
    }

    // Combs: enumerate simple paths as spines (lexicographic DFS, reverse
    // duplicates skipped) and ask for k disjoint teeth per spine. The teeth
    // flow depends only on the spine's vertex set, so results are memoized by
    // bitmask: distinct paths over the same vertices share one evaluation.
    int n = static_cast<int>(ix.tokens.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [e, m] : g.edges()) {
        adj[ix.index.at(e.first)].push_back(ix.index.at(e.second));
        adj[ix.index.at(e.second)].push_back(ix.index.at(e.first));
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    bool can_memo = n <= 64;
    std::map<std::uint64_t, bool> enough_teeth;
    std::vector<int> spine;
    std::uint64_t spine_mask = 0;
    bool budget_hit = false;

    auto evaluate = [&](const std::uint64_t mask) {
        std::set<Vertex> sources;
        for (int v : spine)
            sources.insert(ix.tokens[v]);
        if (!can_memo)
            return search.max_paths(sources, 1, u_set, true) >= k;
        auto memo = enough_teeth.find(mask);
        if (memo != enough_teeth.end())
            return memo->second;
        bool hit = search.max_paths(sources, 1, u_set, true) >= k;
        enough_teeth.emplace(mask, hit);
        return hit;
    };
    std::function<bool()> try_spine = [&]() -> bool {
        if (out.nodes_visited++ >= budget) {
            budget_hit = true;
            return false;
        }
        if ((spine.size() < 2 || spine.front() < spine.back()) && evaluate(spine_mask)) {
            CombWitness w;
            std::set<Vertex> sources;
            for (int v : spine) {
                w.spine.push_back(ix.tokens[v]);
                sources.insert(ix.tokens[v]);
            }
            w.teeth = search.paths(sources, 1, u_set, k, true);
            // teeth come back keyed by spine position; sort for stability
            std::sort(w.teeth.begin(), w.teeth.end());
            out.comb = std::move(w);
            return true;
        }
        for (int next : adj[spine.back()]) {
            if (can_memo ? ((spine_mask >> next) & 1) != 0
                         : std::find(spine.begin(), spine.end(), next) != spine.end())
                continue;
            spine.push_back(next);
            if (can_memo)
                spine_mask |= 1ull << next;
            bool done = try_spine();
            if (can_memo)
                spine_mask &= ~(1ull << next);
            spine.pop_back();
            if (done || budget_hit)
                return done;
        }
        return false;
    };
    for (int start = 0; start < n; ++start) {
        spine = {start};
        spine_mask = can_memo ? 1ull << start : 0;
        if (try_spine())
            return out;
        if (budget_hit)
            break;
    }
    out.exhausted_exactly = !budget_hit;
    return out;
}

bool validate_star(const MultiGraph& g, const StarWitness& w, const std::set<Vertex>& u_set,
                   int k) {
    if (!g.has_vertex(w.center))
        return false;
    if (w.paths.size() < static_cast<std::size_t>(k))
        return false;
    std::set<Vertex> used;
    for (const auto& path : w.paths) {
        if (path.size() < 2 || path.front() != w.center)
            return false;
        if (!u_set.count(path.back()) || path.back() == w.center)
            return false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (!g.has_edge(path[i], path[i + 1]))
                return false;
        for (std::size_t i = 1; i < path.size(); ++i)
            if (path[i] == w.center || !used.insert(path[i]).second)
                return false; // paths meet only at the center
    }
    return true;
}

bool validate_comb(const MultiGraph& g, const CombWitness& w, const std::set<Vertex>& u_set,
                   int k) {
    if (w.spine.empty() || w.teeth.size() < static_cast<std::size_t>(k))
        return false;
    std::set<Vertex> on_spine(w.spine.begin(), w.spine.end());
    if (on_spine.size() != w.spine.size())
        return false;
    for (const Vertex& v : w.spine)
        if (!g.has_vertex(v))
            return false;
    for (std::size_t i = 0; i + 1 < w.spine.size(); ++i)
        if (!g.has_edge(w.spine[i], w.spine[i + 1]))
            return false;
    std::set<Vertex> used; // tooth vertices, spine starts included
    for (const auto& tooth : w.teeth) {
        if (tooth.empty())
            return false;
        if (!on_spine.count(tooth.front()))
            return false; // first vertex lies on the spine
        if (!u_set.count(tooth.back()))
            return false;
        for (std::size_t i = 0; i + 1 < tooth.size(); ++i)
            if (!g.has_edge(tooth[i], tooth[i + 1]))
                return false;
        for (std::size_t i = 1; i < tooth.size(); ++i)
            if (on_spine.count(tooth[i]))
                return false; // only the first vertex may touch the spine
        for (const Vertex& v : tooth)
            if (!used.insert(v).second)
                return false; // teeth pairwise disjoint
    }
    return true;
}

} // namespace fareyforge
