#include "fareyforge/minors.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "fareyforge/generators.hpp"
#include "fareyforge/graph_io.hpp"

namespace fareyforge {

using nlohmann::json;

std::map<Vertex, std::set<Vertex>> MinorMap::branch_sets() const {
    std::map<Vertex, std::set<Vertex>> out;
    for (const auto& [h, p] : assign)
        out[p].insert(h);
    return out;
}

MinorMap MinorMap::identity(const MultiGraph& g) {
    MinorMap m{g, g, {}};
    for (const Vertex& v : g.vertices())
        m.assign[v] = v;
    return m;
}

ModelValidation validate_model(const MinorMap& m) {
    ModelValidation out;
    auto fail = [&](const std::string& msg) { out.violations.push_back(msg); };

    for (const auto& [h, p] : m.assign) {
        if (!m.host.has_vertex(h))
            fail("branch vertex '" + h + "' is not a host vertex");
        if (!m.pattern.has_vertex(p))
            fail("'" + h + "' is assigned to unknown pattern vertex '" + p + "'");
    }
    auto branches = m.branch_sets();
    for (const Vertex& p : m.pattern.vertices())
        if (!branches.count(p))
            fail("pattern vertex '" + p + "' has an empty branch set");
    if (!out.violations.empty()) {
        out.ok = false;
        return out;
    }
    for (const auto& [p, branch] : branches)
        if (!is_connected(induced(m.host, branch)))
            fail("branch set of '" + p + "' is disconnected");
    for (const auto& [e, mult] : m.pattern.edges()) {
        if (!branches.count(e.first) || !branches.count(e.second))
            continue;
        bool covered = false;
        for (const Vertex& a : branches[e.first]) {
            for (const Vertex& b : branches[e.second])
                if (m.host.has_edge(a, b)) {
                    covered = true;
                    break;
                }
            if (covered)
                break;
        }
        if (!covered)
            fail("pattern edge {" + e.first + "," + e.second + "} is uncovered");
    }
    out.ok = out.violations.empty();
    return out;
}

MinorMap compose(const MinorMap& outer, const MinorMap& inner) {
    if (inner.pattern != outer.host)
        throw input_error("compose: inner pattern and outer host differ");
    MinorMap out;
    out.host = inner.host;
    out.pattern = outer.pattern;
    for (const auto& [g, h] : inner.assign) {
        auto it = outer.assign.find(h);
        if (it != outer.assign.end())
            out.assign[g] = it->second;
    }
    return out;
}

namespace {

bool subgraph_of(const MultiGraph& sub, const MultiGraph& super) {
    for (const Vertex& v : sub.vertices())
        if (!super.has_vertex(v))
            return false;
    for (const auto& [e, m] : sub.edges())
        if (super.multiplicity(e.first, e.second) < m)
            return false;
    return true;
}

} // namespace

MinorMap limit_chain(const ModelChain& chain) {
    std::size_t n = chain.graphs.size();
    if (n == 0 || chain.kept.size() != n || chain.maps.size() + 1 != n)
        throw input_error("limit_chain: sizes must be graphs = kept = maps + 1");
    for (std::size_t i = 0; i < n; ++i)
        if (!subgraph_of(chain.kept[i], chain.graphs[i]))
            throw input_error("limit_chain: kept graph " + std::to_string(i) +
                              " is not a subgraph of its stage");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!subgraph_of(chain.kept[i], chain.kept[i + 1]))
            throw input_error("limit_chain: kept graphs are not ascending at stage " +
                              std::to_string(i));
        if (chain.maps[i].host != chain.graphs[i] || chain.maps[i].pattern != chain.graphs[i + 1])
            throw input_error("limit_chain: map " + std::to_string(i) +
                              " does not connect its stages");
        for (const Vertex& v : chain.kept[i].vertices()) {
            auto it = chain.maps[i].assign.find(v);
            if (it == chain.maps[i].assign.end() || it->second != v)
                throw input_error("limit_chain: identity restriction violated at stage " +
                                  std::to_string(i) + " on kept vertex '" + v + "'");
        }
    }

    const MultiGraph& final_pattern = chain.kept.back();
    MinorMap out;
    out.host = chain.graphs.front();
    out.pattern = final_pattern;

    // First kept stage per final vertex.
    std::map<Vertex, std::size_t> first_stage;
    for (const Vertex& x : final_pattern.vertices())
        for (std::size_t i = 0; i < n; ++i)
            if (chain.kept[i].has_vertex(x)) {
                first_stage[x] = i;
                break;
            }

    if (chain.maps.empty()) {
        for (const Vertex& x : final_pattern.vertices())
            out.assign[x] = x;
        return out;
    }

    // hat_i: G_0 ≽ G_{i+1}; branch sets accumulate as ascending unions.
    std::map<Vertex, std::set<Vertex>> branch;
    MinorMap hat = chain.maps.front();
    for (std::size_t i = 0;; ++i) {
        for (const Vertex& x : final_pattern.vertices()) {
            if (first_stage.at(x) > i + 1)
                continue;
            for (const auto& [v, img] : hat.assign)
                if (img == x)
                    branch[x].insert(v);
        }
        if (i + 1 == chain.maps.size())
            break;
        hat = compose(chain.maps[i + 1], hat);
    }
    for (const auto& [x, vs] : branch)
        for (const Vertex& v : vs)
            out.assign[v] = x;
    // Vertices kept from stage 0 map to themselves even with no map touching
    // them (they are their own ascending union).
    for (const Vertex& x : final_pattern.vertices())
        if (!branch.count(x) || branch[x].empty())
            throw input_error("limit_chain: final vertex '" + x + "' acquired no branch set");
    return out;
}

// --- backtracking minor search ----------------------------------------------

namespace {

struct MinorSearch {
    const MultiGraph& host;
    const MultiGraph& pattern;
    std::uint64_t budget;
    std::uint64_t visited = 0;
    bool out_of_budget = false;

    std::vector<Vertex> order;                    // pattern vertices, search order
    std::map<Vertex, Vertex> pin;                 // pattern -> required host vertex
    std::map<Vertex, std::set<Vertex>> assigned;  // pattern -> branch set
    std::set<Vertex> used;                        // host vertices consumed
    std::optional<MinorMap> found;

    MinorSearch(const MultiGraph& h, const MultiGraph& p, std::uint64_t b,
                const std::map<Vertex, Vertex>& pins)
        : host(h), pattern(p), budget(b), pin(pins) {
        std::vector<Vertex> vs(pattern.vertices().begin(), pattern.vertices().end());
        std::stable_sort(vs.begin(), vs.end(), [&](const Vertex& a, const Vertex& b2) {
            return pattern.degree(a) > pattern.degree(b2);
        });
        // Pinned vertices first: their branch sets are the most constrained.
        std::stable_partition(vs.begin(), vs.end(),
                              [&](const Vertex& v) { return pin.count(v) > 0; });
        order = std::move(vs);
    }

    bool tick() {
        if (visited >= budget) {
            out_of_budget = true;
            return false;
        }
        ++visited;
        return true;
    }

    // All pattern edges from `pv` to already-assigned vertices must be covered.
    bool edges_ok(const Vertex& pv, const std::set<Vertex>& branch) const {
        for (const Vertex& q : pattern.neighbors(pv)) {
            auto it = assigned.find(q);
            if (it == assigned.end())
                continue;
            bool covered = false;
            for (const Vertex& a : branch) {
                for (const Vertex& b : it->second)
                    if (host.has_edge(a, b)) {
                        covered = true;
                        break;
                    }
                if (covered)
                    break;
            }
            if (!covered)
                return false;
        }
        return true;
    }

    bool place(std::size_t idx) {
        if (idx == order.size()) {
            MinorMap m{host, pattern, {}};
            for (const auto& [p, branch] : assigned)
                for (const Vertex& v : branch)
                    m.assign[v] = p;
            found = std::move(m);
            return true;
        }
        const Vertex& pv = order[idx];
        std::size_t later = order.size() - idx - 1;
        auto pinned = pin.find(pv);
        if (pinned != pin.end()) {
            if (used.count(pinned->second))
                return false;
            return grow(idx, pv, {pinned->second}, later);
        }
        // Roots ascending; to avoid duplicates a branch set grown from root r
        // never contains a vertex below r.
        for (const Vertex& r : host.vertices()) {
            if (used.count(r))
                continue;
            if (grow(idx, pv, {r}, later))
                return true;
            if (out_of_budget)
                return false;
        }
        return false;
    }

    bool grow(std::size_t idx, const Vertex& pv, std::set<Vertex> branch, std::size_t later) {
        std::set<Vertex> forbidden;
        return grow_step(idx, pv, branch, forbidden, later);
    }

    bool grow_step(std::size_t idx, const Vertex& pv, std::set<Vertex>& branch,
                   std::set<Vertex>& forbidden, std::size_t later) {
        if (!tick())
            return false;
        if (edges_ok(pv, branch)) {
            for (const Vertex& v : branch)
                used.insert(v);
            assigned[pv] = branch;
            if (place(idx + 1))
                return true;
            assigned.erase(pv);
            for (const Vertex& v : branch)
                used.erase(v);
            if (out_of_budget)
                return false;
        }
        if (host.vertex_count() - used.size() - branch.size() < later)
            return false; // every later pattern vertex still needs a host vertex
        const Vertex& root = pin.count(pv) ? pin.at(pv) : *branch.begin();
        std::vector<Vertex> extensions;
        for (const Vertex& v : branch)
            for (const Vertex& w : host.neighbors(v)) {
                if (used.count(w) || branch.count(w) || forbidden.count(w))
                    continue;
                if (!pin.count(pv) && w < root)
                    continue; // canonical: root is the least member
                extensions.push_back(w);
            }
        std::sort(extensions.begin(), extensions.end());
        extensions.erase(std::unique(extensions.begin(), extensions.end()), extensions.end());
        for (const Vertex& w : extensions) {
            branch.insert(w);
            if (grow_step(idx, pv, branch, forbidden, later))
                return true;
            branch.erase(w);
            if (out_of_budget)
                return false;
            forbidden.insert(w);
        }
        for (const Vertex& w : extensions)
            forbidden.erase(w);
        return false;
    }
};

} // namespace

MinorSearchResult find_minor(const MultiGraph& host, const MultiGraph& pattern,
                             std::uint64_t budget, const std::map<Vertex, Vertex>& pins) {
    for (const auto& [p, h] : pins) {
        if (!pattern.has_vertex(p))
            throw input_error("find_minor: pin names unknown pattern vertex '" + p + "'");
        if (!host.has_vertex(h))
            throw input_error("find_minor: pin names unknown host vertex '" + h + "'");
    }
    MinorSearchResult out;
    if (pattern.vertex_count() == 0) {
        out.status = SearchStatus::found;
        out.model = MinorMap{host, pattern, {}};
        return out;
    }
    MinorSearch search(host, pattern, budget, pins);
    bool ok = search.place(0);
    out.nodes_visited = search.visited;
    if (ok) {
        out.status = SearchStatus::found;
        out.model = std::move(search.found);
    } else {
        out.status = search.out_of_budget ? SearchStatus::budget_exhausted : SearchStatus::absent;
    }
    return out;
}

// --- disjoint cycles ---------------------------------------------------------

namespace {

// All simple cycles, canonical form: least vertex first, second < last,
// parallel pairs as 2-cycles. Sorted by (length, sequence).
std::vector<std::vector<Vertex>> all_cycles(const MultiGraph& g, std::uint64_t budget,
                                            std::uint64_t& steps) {
    std::vector<std::vector<Vertex>> cycles;
    for (const auto& [e, m] : g.edges())
        if (m >= 2)
            cycles.push_back({e.first, e.second});

    std::vector<Vertex> order(g.vertices().begin(), g.vertices().end());
    for (const Vertex& base : order) {
        std::vector<Vertex> path{base};
        std::set<Vertex> on_path{base};
        std::function<void()> extend = [&]() {
            if (++steps > budget)
                throw resource_error("two_disjoint_cycles: enumeration budget exceeded");
            const Vertex& tip = path.back();
            for (const Vertex& w : g.neighbors(tip)) {
                if (w < base || on_path.count(w))
                    continue;
                path.push_back(w);
                on_path.insert(w);
                if (path.size() >= 3 && g.has_edge(w, base) && path[1] < path.back())
                    cycles.push_back(path);
                extend();
                on_path.erase(w);
                path.pop_back();
            }
        };
        extend();
    }
    std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return cycles;
}

} // namespace

namespace {

// Does some single vertex meet every cycle? Union-find per candidate vertex.
bool one_vertex_meets_all_cycles(const MultiGraph& g) {
    std::vector<Vertex> tokens(g.vertices().begin(), g.vertices().end());
    std::map<Vertex, int> index;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        index[tokens[i]] = static_cast<int>(i);
    int n = static_cast<int>(tokens.size());
    std::vector<int> parent(n);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int skip = 0; skip < n; ++skip) {
        for (int i = 0; i < n; ++i)
            parent[i] = i;
        bool cycle = false;
        for (const auto& [e, m] : g.edges()) {
            int a = index[e.first], b = index[e.second];
            if (a == skip || b == skip)
                continue;
            if (m >= 2) {
                cycle = true;
                break;
            }
            int ra = find(a), rb = find(b);
            if (ra == rb) {
                cycle = true;
                break;
            }
            parent[ra] = rb;
        }
        if (!cycle)
            return true;
    }
    return false;
}

} // namespace

std::optional<TwoCycles> two_disjoint_cycles(const MultiGraph& g, std::uint64_t budget) {
    if (is_forest(g))
        return std::nullopt;
    // If one vertex meets every cycle, two disjoint cycles cannot exist.
    if (one_vertex_meets_all_cycles(g))
        return std::nullopt;
    std::uint64_t steps = 0;
    auto cycles = all_cycles(g, budget, steps);
    for (const auto& c : cycles) {
        std::set<Vertex> rest;
        for (const Vertex& v : g.vertices())
            if (std::find(c.begin(), c.end(), v) == c.end())
                rest.insert(v);
        MultiGraph remainder = induced(g, rest);
        if (is_forest(remainder))
            continue;
        auto second = all_cycles(remainder, budget, steps);
        return TwoCycles{c, second.front()};
    }
    return std::nullopt;
}

MinorMap full_farey_minor_in_halved(int order) {
    if (order < 1)
        throw input_error("full_farey_minor_in_halved: order must be >= 1");
    MultiGraph host = halved_farey(order).graph;
    const Vertex zero = Fraction(0, 1).text();
    const Vertex inf = Fraction::infinity().text();
    const Vertex one = Fraction(1, 1).text();

    MultiGraph cut = host;
    cut.remove_edge(zero, one); // the chosen blue level-1 edge
    MultiGraph pattern = contract_sets(cut, {{zero, inf}});
    Vertex merged = contracted_name({zero, inf}, {});

    MinorMap m{host, pattern, {}};
    for (const Vertex& v : host.vertices())
        m.assign[v] = (v == zero || v == inf) ? merged : v;
    return m;
}

// --- model JSON --------------------------------------------------------------

MinorMap LoadedModel::against(const MultiGraph& host) const {
    MinorMap m{host, pattern, {}};
    for (const auto& [p, branch] : branch_sets)
        for (const Vertex& v : branch)
            m.assign[v] = p;
    return m;
}

LoadedModel read_model(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw parse_error(std::string("model document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "fareyforge-model-v1")
        throw parse_error("model document missing \"format\":\"fareyforge-model-v1\"");
    LoadedModel out;
    if (doc.contains("pattern") && doc["pattern"].is_object()) {
        out.pattern = read_graph(doc["pattern"].dump()).graph;
    } else if (doc.contains("pattern") && doc["pattern"].is_string()) {
        // Generator names: "halved-farey:N", "farey:N", "complete:N".
        std::string name = doc["pattern"].get<std::string>();
        auto colon = name.find(':');
        if (colon == std::string::npos)
            throw parse_error("pattern generator '" + name + "' is not name:parameter");
        std::string kind = name.substr(0, colon);
        int param = 0;
        try {
            param = std::stoi(name.substr(colon + 1));
        } catch (const std::exception&) {
            throw parse_error("pattern generator '" + name + "' has a malformed parameter");
        }
        if (kind == "halved-farey") {
            out.pattern = halved_farey(param).graph;
        } else if (kind == "farey") {
            out.pattern = farey_truncation(param);
        } else if (kind == "complete") {
            for (int i = 1; i <= param; ++i)
                out.pattern.add_vertex("v" + std::to_string(i));
            for (int i = 1; i <= param; ++i)
                for (int j = i + 1; j <= param; ++j)
                    out.pattern.add_edge("v" + std::to_string(i), "v" + std::to_string(j));
        } else {
            throw parse_error("unknown pattern generator '" + kind + "'");
        }
    } else {
        throw parse_error("model document missing \"pattern\"");
    }
    if (!doc.contains("branch_sets") || !doc["branch_sets"].is_object())
        throw parse_error("model document missing \"branch_sets\"");
    for (const auto& [p, arr] : doc["branch_sets"].items()) {
        if (!arr.is_array())
            throw parse_error("branch set of '" + p + "' is not an array");
        for (const auto& v : arr) {
            if (!v.is_string())
                throw parse_error("branch set of '" + p + "' holds a non-string entry");
            out.branch_sets[p].insert(v.get<std::string>());
        }
    }
    return out;
}

std::string write_model(const MinorMap& m) {
    json doc;
    doc["format"] = "fareyforge-model-v1";
    doc["pattern"] = json::parse(write_graph(m.pattern));
    doc["branch_sets"] = json::object();
    for (const auto& [p, branch] : m.branch_sets()) {
        json arr = json::array();
        for (const Vertex& v : branch)
            arr.push_back(v);
        doc["branch_sets"][p] = arr;
    }
    return doc.dump(2) + "\n";
}

} // namespace fareyforge
