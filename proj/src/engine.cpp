#include "fareyforge/engine.hpp"

#include <algorithm>
#include <chrono>

#include "fareyforge/connectivity.hpp"
#include "fareyforge/flow.hpp"

namespace fareyforge {

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

// Minimum vertex cut separating a from b in g minus the a–b edges, as long as
// it stays within `s_max`; nullopt otherwise.
std::optional<std::set<Vertex>> vertex_cut_between(const MultiGraph& g, const Vertex& a,
                                                   const Vertex& b, int s_max) {
    Indexed ix(g);
    int n = static_cast<int>(ix.tokens.size());
    auto in_node = [&](int v) { return 2 * v; };
    auto out_node = [&](int v) { return 2 * v + 1; };
    const long long inf = n + 1;
    FlowNetwork net(2 * n);
    int ai = ix.index.at(a), bi = ix.index.at(b);
    std::vector<int> split_arc(n, -1);
    for (int v = 0; v < n; ++v)
        if (v != ai && v != bi)
            split_arc[v] = net.add_arc(in_node(v), out_node(v), 1);
    auto from_node = [&](int v) { return v == ai || v == bi ? in_node(v) : out_node(v); };
    auto to_node = [&](int v) { return in_node(v); };
    for (const auto& [e, m] : g.edges()) {
        int x = ix.index.at(e.first), y = ix.index.at(e.second);
        if ((x == ai && y == bi) || (x == bi && y == ai))
            continue; // the a–b edges are deleted first
        net.add_arc(from_node(x), to_node(y), inf);
        net.add_arc(from_node(y), to_node(x), inf);
    }
    long long flow = net.max_flow(in_node(ai), in_node(bi), static_cast<long long>(s_max) + 1);
    if (flow > s_max)
        return std::nullopt;
    std::vector<bool> reach = net.residual_reachable(in_node(ai));
    std::set<Vertex> cut;
    for (int v = 0; v < n; ++v)
        if (split_arc[v] >= 0 && reach[in_node(v)] && !reach[out_node(v)])
            cut.insert(ix.tokens[v]);
    return cut;
}

} // namespace

std::optional<SeparatorResult> find_small_separator(const MultiGraph& g,
                                                    const std::set<Vertex>& a_set,
                                                    const std::set<Vertex>& b_set, int s_max) {
    if (a_set.empty() || b_set.empty())
        throw input_error("find_small_separator: endpoint sets must be nonempty");
    for (const Vertex& v : a_set)
        if (!g.has_vertex(v))
            throw input_error("find_small_separator: unknown vertex '" + v + "'");
    for (const Vertex& v : b_set)
        if (!g.has_vertex(v))
            throw input_error("find_small_separator: unknown vertex '" + v + "'");
    if (s_max < 0)
        throw input_error("find_small_separator: s_max must be >= 0");

    bool any_pair = false;
    std::optional<SeparatorResult> best;
    for (const Vertex& a : a_set) {
        for (const Vertex& b : b_set) {
            if (a == b)
                continue; // degenerate pairs are skipped
            any_pair = true;
            int bound = best ? static_cast<int>(best->cut.size()) - 1
                             : s_max; // only strict improvements matter
            if (bound < 0)
                continue;
            auto cut = vertex_cut_between(g, a, b, bound);
            if (cut)
                best = SeparatorResult{a, b, std::move(*cut)};
        }
    }
    if (!any_pair)
        throw input_error("find_small_separator: every pair is degenerate");
    return best;
}

std::variant<FootballSeparation, EngineFailure> football_to_separated(const MultiGraph& g,
                                                                      const Vertex& u,
                                                                      const Vertex& v, int k,
                                                                      int s_max) {
    GadgetReport football = validate_gadget(g, GadgetKind::football, {{"u", u}, {"v", v}}, k);
    if (!football.valid) {
        std::string why;
        for (const std::string& r : football.reasons)
            why += (why.empty() ? "" : "; ") + r;
        return EngineFailure{"precondition", "not a football at strength " + std::to_string(k) +
                                                 ": " + why};
    }
    std::set<Vertex> inner;
    for (const Vertex& w : g.vertices())
        if (w != u && w != v)
            inner.insert(w);
    MultiGraph c = induced(g, inner);
    std::set<Vertex> nu, nv;
    for (const Vertex& w : inner) {
        if (g.has_edge(u, w))
            nu.insert(w);
        if (g.has_edge(v, w))
            nv.insert(w);
    }
    if (nu.empty() || nv.empty())
        return EngineFailure{"precondition", "an endvertex sends no edge into G-u-v"};
    auto sep = find_small_separator(c, nu, nv, s_max);
    if (!sep)
        return EngineFailure{"dense regime",
                             "no separator of size <= " + std::to_string(s_max) +
                                 " between the neighbourhoods"};

    // Keep only ua and vb at the endvertices, drop ab, contract both pairs.
    MultiGraph trimmed = g;
    for (const Vertex& w : g.neighbors(u))
        trimmed.remove_edge(u, w, trimmed.multiplicity(u, w));
    for (const Vertex& w : g.neighbors(v))
        if (w != u)
            trimmed.remove_edge(v, w, trimmed.multiplicity(v, w));
    trimmed.add_edge(u, sep->a);
    trimmed.add_edge(v, sep->b);
    trimmed.remove_edge(sep->a, sep->b, trimmed.multiplicity(sep->a, sep->b));
    MultiGraph h = contract_sets(trimmed, {{u, sep->a}, {v, sep->b}});

    FootballSeparation out;
    out.h = h;
    out.merged_u = contracted_name({u, sep->a}, {});
    out.merged_v = contracted_name({v, sep->b}, {});
    out.cut = sep->cut;
    out.lambda_h = lambda_global(h);
    return out;
}

// --- split_at_separator ------------------------------------------------------

namespace {

std::set<Vertex> set_minus(const std::set<Vertex>& a, const std::set<Vertex>& b) {
    std::set<Vertex> out;
    for (const Vertex& v : a)
        if (!b.count(v))
            out.insert(v);
    return out;
}

std::set<Vertex> set_union(const std::set<Vertex>& a, const std::set<Vertex>& b) {
    std::set<Vertex> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

std::set<Vertex> set_inter(const std::set<Vertex>& a, const std::set<Vertex>& b) {
    std::set<Vertex> out;
    for (const Vertex& v : a)
        if (b.count(v))
            out.insert(v);
    return out;
}

// Deterministic Steiner-style tree: connect the sorted targets one by one with
// shortest lexicographic paths inside `arena`. Returns the tree's vertex set
// or nullopt when some target is unreachable.
std::optional<std::set<Vertex>> steiner_tree_vertices(const MultiGraph& arena,
                                                      const std::set<Vertex>& targets) {
    std::set<Vertex> tree;
    for (const Vertex& q : targets) {
        if (tree.count(q))
            continue;
        if (tree.empty()) {
            tree.insert(q);
            continue;
        }
        std::vector<Vertex> path = shortest_path_avoiding(arena, {q}, tree, {});
        if (path.empty())
            return std::nullopt;
        tree.insert(path.begin(), path.end());
    }
    return tree;
}

SplitReport build_report(const MultiGraph& g, const MultiGraph& h_u, const MultiGraph& h_v,
                         const std::set<Vertex>& x, const Vertex& u, const Vertex& v, int k,
                         int case_id) {
    SplitReport rep;
    rep.case_id = case_id;
    rep.x_connected = !x.empty() && is_connected(induced(g, x));
    rep.avoids_endpoints = !x.count(u) && !x.count(v);
    bool u_attach = false, v_attach = false;
    for (const Vertex& w : x) {
        if (h_u.has_vertex(w) && h_u.has_edge(u, w))
            u_attach = true;
        if (h_v.has_vertex(w) && h_v.has_edge(v, w))
            v_attach = true;
    }
    rep.attach_edges = u_attach && v_attach;
    MultiGraph qu = contract_sets(h_u, {x});
    MultiGraph qv = contract_sets(h_v, {x});
    rep.lambda_u_quotient = qu.vertex_count() <= 1 ? 0 : lambda_global(qu);
    rep.lambda_v_quotient = qv.vertex_count() <= 1 ? 0 : lambda_global(qv);
    rep.strength_ok = rep.lambda_u_quotient >= k && rep.lambda_v_quotient >= k;
    return rep;
}

} // namespace

std::variant<SplitResult, EngineFailure> split_at_separator(const MultiGraph& g, const Vertex& u,
                                                            const Vertex& v,
                                                            const std::set<Vertex>& separator,
                                                            int k) {
    if (u == v)
        throw input_error("split_at_separator: endpoints coincide");
    if (!g.has_vertex(u) || !g.has_vertex(v))
        throw input_error("split_at_separator: unknown endpoint");
    if (separator.count(u) || separator.count(v))
        throw input_error("split_at_separator: separator contains an endpoint");
    for (const Vertex& s : separator)
        if (!g.has_vertex(s))
            throw input_error("split_at_separator: unknown separator vertex '" + s + "'");
    if (k < 1)
        throw input_error("split_at_separator: k must be >= 1");

    MultiGraph rest = induced(g, set_minus(g.vertices(), separator));
    std::set<Vertex> c_u = component_of(rest, u);
    if (c_u.count(v))
        throw input_error("split_at_separator: separator does not separate the endpoints");
    std::set<Vertex> c_v = component_of(rest, v);

    // ~_k classes on both sides; K_w is the class of w.
    auto side_class = [&](const std::set<Vertex>& comp, const Vertex& w,
                          std::set<EdgeKey>& cross) {
        MultiGraph side = induced(g, set_union(comp, separator));
        KClassPartition classes = k_classes(side, k);
        std::set<Vertex> mine;
        for (const auto& cls : classes.classes) {
            if (cls.count(w))
                mine = cls;
        }
        auto class_of = [&](const Vertex& x) -> const std::set<Vertex>* {
            for (const auto& cls : classes.classes)
                if (cls.count(x))
                    return &cls;
            return nullptr;
        };
        for (const auto& [e, m] : side.edges())
            if (class_of(e.first) != class_of(e.second))
                cross.insert(e);
        return mine;
    };
    std::set<EdgeKey> cross_edges;
    std::set<Vertex> k_u = side_class(c_u, u, cross_edges);
    std::set<Vertex> k_v = side_class(c_v, v, cross_edges);

    std::set<Vertex> meet = set_inter(k_u, k_v);
    MultiGraph h_u, h_v;
    std::set<Vertex> x;
    int case_id;

    if (!meet.empty()) {
        case_id = 2;
        const Vertex& s = *meet.begin();
        MultiGraph k_u_graph = induced(g, k_u);
        std::set<Vertex> k_u_less = set_minus(k_u, {u});
        MultiGraph k_u_minus = induced(g, k_u_less);
        if (!k_u_minus.has_vertex(s))
            return EngineFailure{"surrogate-connectivity shortfall",
                                 "meeting vertex fell outside the u-class remainder"};
        std::set<Vertex> d_u = component_of(k_u_minus, s);
        // T: a tree inside D_u through D_u ∩ K_v plus one neighbour of u.
        Vertex u_nbr;
        for (const Vertex& w : g.neighbors(u))
            if (d_u.count(w)) {
                u_nbr = w;
                break;
            }
        if (u_nbr.empty())
            return EngineFailure{"surrogate-connectivity shortfall",
                                 "u has no neighbour in the component of its class at " + s};
        std::set<Vertex> targets = set_inter(d_u, k_v);
        targets.insert(u_nbr);
        auto tree = steiner_tree_vertices(induced(g, d_u), targets);
        if (!tree)
            return EngineFailure{"surrogate-connectivity shortfall",
                                 "required tree targets are disconnected inside the u-class"};
        // P_v: a v–s path in K_v.
        std::vector<Vertex> p_v = shortest_path(induced(g, k_v), v, s);
        if (p_v.empty())
            return EngineFailure{"surrogate-connectivity shortfall",
                                 "the v-class does not connect v to " + s};
        std::set<Vertex> p_v_trim(p_v.begin() + 1, p_v.end());
        x = set_union(*tree, p_v_trim);
        h_u = induced(g, set_union(set_union(d_u, p_v_trim), {u}));
        h_v = induced(g, set_union(k_v, *tree));
    } else {
        case_id = 1;
        std::set<Vertex> start = set_inter(k_u, separator);
        std::set<Vertex> goal = set_inter(k_v, separator);
        if (start.empty() || goal.empty())
            return EngineFailure{"surrogate-connectivity shortfall",
                                 "a class misses the separator entirely"};
        std::vector<Vertex> raw = shortest_path_avoiding(g, start, goal, cross_edges);
        if (raw.empty())
            return EngineFailure{"surrogate-connectivity shortfall",
                                 "no class-to-class path avoids the cross edges"};
        // Trim to a K_u–K_v path: interior avoids both classes.
        std::size_t j0 = 0;
        while (!k_v.count(raw[j0]))
            ++j0;
        std::size_t i0 = 0;
        for (std::size_t i = 0; i < j0; ++i)
            if (k_u.count(raw[i]))
                i0 = i;
        std::vector<Vertex> p(raw.begin() + i0, raw.begin() + j0 + 1);
        std::set<Vertex> p_set(p.begin(), p.end());

        std::vector<Vertex> p_u = shortest_path(induced(g, k_u), u, p.front());
        std::vector<Vertex> p_v = shortest_path(induced(g, k_v), v, p.back());
        if (p_u.empty() || p_v.empty())
            return EngineFailure{"surrogate-connectivity shortfall",
                                 "a class does not connect its endpoint to the path"};
        std::set<Vertex> p_u_trim(p_u.begin() + 1, p_u.end());
        std::set<Vertex> p_v_trim(p_v.begin() + 1, p_v.end());
        x = set_minus(set_union(set_union(p_u_trim, p_set), p_v_trim), {u, v});
        h_u = induced(g, set_union(set_union(k_u, p_set), p_v_trim));
        h_v = induced(g, set_union(set_union(k_v, p_set), p_u_trim));
    }

    if (set_inter(h_u.vertices(), h_v.vertices()) != x)
        return EngineFailure{"surrogate-connectivity shortfall",
                             "overlap of the two sides is not the expected X"};
    SplitResult out;
    out.h_u = std::move(h_u);
    out.h_v = std::move(h_v);
    out.x_set = std::move(x);
    out.report = build_report(g, out.h_u, out.h_v, out.x_set, u, v, k, case_id);
    return out;
}

// --- plow extraction ---------------------------------------------------------

namespace {

// Rebuild pattern + assignment from branch sets with host-consistent names:
// the u/v branches keep the endpoint tokens, singletons keep their vertex и
// larger branches get the contracted-name convention.
MinorMap relabel_plow_model(const MultiGraph& host, const MultiGraph& raw_pattern,
                            const std::map<Vertex, Vertex>& raw_assign, const Vertex& u,
                            const Vertex& v, Vertex& head_io, Vertex& end_u_io, Vertex& end_v_io) {
    std::map<Vertex, std::set<Vertex>> branches;
    for (const auto& [h, p] : raw_assign)
        branches[p].insert(h);
    std::map<Vertex, Vertex> rename; // raw pattern vertex -> final token
    std::set<Vertex> taken;
    for (const auto& [p, branch] : branches) {
        if (branch.count(u)) {
            rename[p] = u;
            taken.insert(u);
        } else if (branch.count(v)) {
            rename[p] = v;
            taken.insert(v);
        } else if (branch.size() == 1) {
            rename[p] = *branch.begin();
            taken.insert(*branch.begin());
        }
    }
    for (const auto& [p, branch] : branches) {
        if (rename.count(p))
            continue;
        Vertex name = contracted_name(branch, taken);
        rename[p] = name;
        taken.insert(name);
    }
    MinorMap out;
    out.host = host;
    for (const Vertex& p : raw_pattern.vertices())
        out.pattern.add_vertex(rename.at(p));
    for (const auto& [e, m] : raw_pattern.edges())
        out.pattern.add_edge(rename.at(e.first), rename.at(e.second), m);
    for (const auto& [h, p] : raw_assign)
        out.assign[h] = rename.at(p);
    head_io = rename.at(head_io);
    end_u_io = rename.at(end_u_io);
    end_v_io = rename.at(end_v_io);
    return out;
}

MultiGraph clique_plow_pattern(int m) {
    MultiGraph p;
    std::vector<Vertex> left{"u"}, right{"v"};
    for (int i = 1; i < m; ++i) {
        left.push_back("a" + std::to_string(i));
        right.push_back("b" + std::to_string(i));
    }
    left.push_back("h");
    right.push_back("h");
    for (const Vertex& x : left)
        p.add_vertex(x);
    for (const Vertex& x : right)
        if (!p.has_vertex(x))
            p.add_vertex(x);
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = i + 1; j < left.size(); ++j)
            p.add_edge(left[i], left[j]);
    for (std::size_t i = 0; i < right.size(); ++i)
        for (std::size_t j = i + 1; j < right.size(); ++j)
            p.add_edge(right[i], right[j]);
    return p;
}

} // namespace

PlowResult plow_extract(const MultiGraph& g, const Vertex& u, const Vertex& v, int k,
                        const PlowOptions& opts) {
    if (u == v)
        throw input_error("plow_extract: endpoints coincide");
    if (!g.has_vertex(u) || !g.has_vertex(v))
        throw input_error("plow_extract: unknown endpoint");
    if (k < 1)
        throw input_error("plow_extract: k must be >= 1");
    int s_max = opts.s_max < 0 ? k : opts.s_max;

    PlowResult result;
    std::vector<EngineFailure>& attempts = result.failures;
    if (!is_connected(g)) {
        attempts.push_back({"precondition", "host is disconnected"});
        return result;
    }
    int lambda_host = lambda_global(g);

    MultiGraph g0 = g;
    g0.remove_edge(u, v, g0.multiplicity(u, v)); // separators live in g - uv

    // Route 1: separator + split.
    auto sep = find_small_separator(g0, {u}, {v}, s_max);
    if (!sep) {
        attempts.push_back({"dense regime",
                            "no u-v separator of size <= " + std::to_string(s_max)});
    } else {
        auto split = split_at_separator(g0, u, v, sep->cut, k);
        if (std::holds_alternative<EngineFailure>(split)) {
            attempts.push_back(std::get<EngineFailure>(split));
        } else {
            SplitResult& sr = std::get<SplitResult>(split);
            bool shape_ok = sr.report.x_connected && sr.report.avoids_endpoints &&
                            sr.report.attach_edges && sr.report.lambda_u_quotient >= 1 &&
                            sr.report.lambda_v_quotient >= 1;
            if (!shape_ok) {
                attempts.push_back({"surrogate-connectivity shortfall",
                                    "split conditions failed on the separator route"});
            } else {
                MultiGraph plow_raw = contract_sets(graph_union(sr.h_u, sr.h_v), {sr.x_set});
                Vertex head = contracted_name(
                    sr.x_set, set_minus(set_union(sr.h_u.vertices(), sr.h_v.vertices()),
                                        sr.x_set));
                std::map<Vertex, Vertex> raw_assign;
                for (const Vertex& w : set_union(sr.h_u.vertices(), sr.h_v.vertices()))
                    raw_assign[w] = sr.x_set.count(w) ? head : w;
                Vertex end_u = u, end_v = v;
                MinorMap model = relabel_plow_model(g, plow_raw, raw_assign, u, v, head, end_u,
                                                    end_v);
                int achieved = std::min(sr.report.lambda_u_quotient, sr.report.lambda_v_quotient);
                GadgetReport gr = validate_gadget(
                    model.pattern, GadgetKind::plow,
                    {{"u", end_u}, {"head", head}, {"v", end_v}}, achieved);
                ModelValidation mv = validate_model(model);
                if (gr.valid && mv.ok) {
                    PlowExtract out;
                    out.model = std::move(model);
                    out.head = head;
                    out.end_u = end_u;
                    out.end_v = end_v;
                    out.achieved = achieved;
                    out.lambda_host = lambda_host;
                    out.route = "separator";
                    out.gadget = std::move(gr);
                    out.split_report = sr.report;
                    out.attempts = attempts;
                    result.extract = std::move(out);
                    return result;
                }
                attempts.push_back({"separator route",
                                    "constructed certificate failed re-validation"});
            }
        }
    }

    // Route 2: direct pattern search with clique halves, strongest feasible
    // strength first; strength-1 plows are degenerate so 2 is the floor.
    int cap = (static_cast<int>(g0.vertex_count()) - 1) / 2;
    int m_top = std::min(k, cap);
    if (m_top < 2) {
        attempts.push_back({"payload too small",
                            "host cannot carry a plow with clique halves of strength >= 2"});
        return result;
    }
    for (int m = m_top; m >= 2; --m) {
        MultiGraph pattern = clique_plow_pattern(m);
        std::uint64_t left = opts.node_budget > result.nodes_visited
                                 ? opts.node_budget - result.nodes_visited
                                 : 0;
        MinorSearchResult found = find_minor(g0, pattern, left, {{"u", u}, {"v", v}});
        result.nodes_visited += found.nodes_visited;
        if (found.status == SearchStatus::found) {
            Vertex head = "h", end_u = "u", end_v = "v";
            MinorMap model = relabel_plow_model(g, found.model->pattern, found.model->assign, u,
                                                v, head, end_u, end_v);
            GadgetReport gr =
                validate_gadget(model.pattern, GadgetKind::plow,
                                {{"u", end_u}, {"head", head}, {"v", end_v}}, m);
            ModelValidation mv = validate_model(model);
            if (!gr.valid || !mv.ok) {
                attempts.push_back({"pattern-search",
                                    "strength " + std::to_string(m) +
                                        " witness failed re-validation"});
                continue;
            }
            PlowExtract out;
            out.model = std::move(model);
            out.head = head;
            out.end_u = end_u;
            out.end_v = end_v;
            out.achieved = m;
            out.lambda_host = lambda_host;
            out.route = "pattern-search";
            out.gadget = std::move(gr);
            out.attempts = attempts;
            result.extract = std::move(out);
            return result;
        }
        if (found.status == SearchStatus::budget_exhausted) {
            attempts.push_back({"budget",
                                "pattern search at strength " + std::to_string(m) +
                                    " exhausted its node budget"});
            return result;
        }
        attempts.push_back({"pattern-search",
                            "no plow with clique halves of strength " + std::to_string(m)});
    }
    return result;
}

// --- the iterative engine ----------------------------------------------------

namespace {

struct BlueEdge {
    Fraction a, b; // a < b numerically; rounds process edges left to right
};

} // namespace

EngineTrace farey_engine(const MultiGraph& g, int k, int n_max, const EngineOptions& opts) {
    if (k < 1)
        throw input_error("farey_engine: k must be >= 1");
    if (n_max < 0)
        throw input_error("farey_engine: n_max must be >= 0");
    if (g.distinct_edge_count() == 0)
        throw input_error("farey_engine: host has no edge to seed the construction");
    auto started = std::chrono::steady_clock::now();

    EngineTrace trace;
    std::uint64_t budget_left = opts.node_budget;

    // Round 0: the least edge is the order-0 graph, the rest its reservoir.
    EdgeKey seed = g.edges().begin()->first;
    const Fraction zero(0, 1);
    const Fraction inf = Fraction::infinity();
    trace.fraction_token[zero.text()] = seed.first;
    trace.fraction_token[inf.text()] = seed.second;

    MultiGraph kept0;
    kept0.add_vertex(seed.first);
    kept0.add_vertex(seed.second);
    kept0.add_edge(seed.first, seed.second);
    trace.chain.graphs.push_back(g);
    trace.chain.kept.push_back(kept0);

    std::map<std::pair<std::string, std::string>, MultiGraph> reservoirs;
    {
        MultiGraph r = g;
        r.remove_edge(seed.first, seed.second, 1); // the designated edge stays outside
        reservoirs[{zero.text(), inf.text()}] = std::move(r);
    }
    std::vector<BlueEdge> blue{{zero, inf}};

    trace.completed_order = 0;
    trace.stop_reason = "order-reached";

    for (int round = 1; round <= n_max; ++round) {
        if (opts.time_budget_seconds) {
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            if (elapsed > *opts.time_budget_seconds) {
                trace.stop_reason = "time-budget";
                break;
            }
        }
        const MultiGraph& current = trace.chain.graphs.back();
        const MultiGraph& kept = trace.chain.kept.back();

        EngineRound round_record;
        round_record.order = round;
        round_record.min_achieved = lambda_infinite;

        MultiGraph next_kept = kept;
        std::map<Vertex, Vertex> phi_assign;
        for (const Vertex& f : kept.vertices())
            phi_assign[f] = f;
        std::vector<BlueEdge> next_blue;
        std::map<std::pair<std::string, std::string>, MultiGraph> next_reservoirs;
        bool failed = false, out_of_gas = false;

        for (const BlueEdge& edge : blue) {
            EngineExtraction rec;
            rec.x_fraction = edge.a.text();
            rec.y_fraction = edge.b.text();
            rec.x_token = trace.fraction_token.at(rec.x_fraction);
            rec.y_token = trace.fraction_token.at(rec.y_fraction);
            const MultiGraph& reservoir = reservoirs.at({rec.x_fraction, rec.y_fraction});

            PlowOptions popts;
            popts.s_max = opts.s_max;
            popts.node_budget = budget_left;
            PlowResult result = plow_extract(reservoir, rec.x_token, rec.y_token, k, popts);
            budget_left -= std::min(budget_left, result.nodes_visited);
            trace.nodes_used += result.nodes_visited;
            if (!result.ok()) {
                rec.ok = false;
                rec.failures = result.failures;
                round_record.extractions.push_back(rec);
                failed = true;
                for (const EngineFailure& f : rec.failures)
                    if (f.kind == "budget")
                        out_of_gas = true;
                break;
            }
            PlowExtract& plow = *result.extract;
            rec.ok = true;
            rec.route = plow.route;
            rec.achieved = plow.achieved;
            rec.failures = plow.attempts;
            Fraction med = mediant(edge.a, edge.b);
            rec.head_fraction = med.text();
            rec.head_token = plow.head;
            round_record.min_achieved = std::min(round_record.min_achieved, plow.achieved);
            round_record.extractions.push_back(rec);
            trace.fraction_token[rec.head_fraction] = plow.head;

            // New kept vertices and edges.
            next_kept.add_vertex(plow.head);
            next_kept.add_edge(rec.x_token, plow.head);
            next_kept.add_edge(plow.head, rec.y_token);

            // Halves of the plow become the two new reservoirs, each without
            // one designated copy of its blue edge.
            const MultiGraph& pattern = plow.model.pattern;
            std::set<Vertex> head_out = set_minus(pattern.vertices(), {plow.head});
            MultiGraph decap = induced(pattern, head_out);
            std::set<Vertex> side_u = component_of(decap, plow.end_u);
            side_u.insert(plow.head);
            std::set<Vertex> side_v = component_of(decap, plow.end_v);
            side_v.insert(plow.head);
            MultiGraph res_u = induced(pattern, side_u);
            res_u.remove_edge(plow.end_u, plow.head, 1);
            MultiGraph res_v = induced(pattern, side_v);
            res_v.remove_edge(plow.head, plow.end_v, 1);
            next_reservoirs[{rec.x_fraction, rec.head_fraction}] = std::move(res_u);
            next_reservoirs[{rec.head_fraction, rec.y_fraction}] = std::move(res_v);
            next_blue.push_back({edge.a, med});
            next_blue.push_back({med, edge.b});

            for (const auto& [hv, pv] : plow.model.assign)
                phi_assign[hv] = pv;
        }

        if (failed) {
            trace.rounds.push_back(std::move(round_record));
            trace.stop_reason = out_of_gas ? "budget-exhausted" : "extraction-failed";
            break;
        }

        // Assemble G_{round}: the kept Farey edges plus all reservoir edges.
        MultiGraph next = next_kept;
        for (const auto& [key, res] : next_reservoirs) {
            for (const Vertex& v : res.vertices())
                next.add_vertex(v);
            for (const auto& [e, m] : res.edges())
                next.add_edge(e.first, e.second, m);
        }

        // Reservoir bookkeeping invariants: each reservoir meets the kept
        // graph exactly in its two endpoints, two reservoirs only in shared
        // endpoints.
        {
            std::vector<std::pair<std::pair<std::string, std::string>, const MultiGraph*>> rs;
            for (const auto& [key, res] : next_reservoirs)
                rs.push_back({key, &res});
            for (const auto& [key, res] : rs) {
                std::set<Vertex> meet = set_inter(res->vertices(), next_kept.vertices());
                std::set<Vertex> expect{trace.fraction_token.at(key.first),
                                        trace.fraction_token.at(key.second)};
                if (meet != expect)
                    throw input_error("farey_engine: reservoir (" + key.first + "," + key.second +
                                      ") meets the kept graph outside its endpoints");
            }
            for (std::size_t i = 0; i < rs.size(); ++i)
                for (std::size_t j = i + 1; j < rs.size(); ++j) {
                    std::set<Vertex> meet = set_inter(rs[i].second->vertices(),
                                                      rs[j].second->vertices());
                    std::set<Vertex> allowed;
                    for (const std::string& f : {rs[i].first.first, rs[i].first.second})
                        if (f == rs[j].first.first || f == rs[j].first.second)
                            allowed.insert(trace.fraction_token.at(f));
                    if (meet != allowed)
                        throw input_error("farey_engine: reservoirs overlap beyond shared "
                                          "endpoints");
                }
        }

        MinorMap phi{current, next, std::move(phi_assign)};
        ModelValidation mv = validate_model(phi);
        if (!mv.ok)
            throw input_error("farey_engine: round map failed validation: " + mv.violations[0]);
        trace.chain.maps.push_back(std::move(phi));
        trace.chain.graphs.push_back(std::move(next));
        trace.chain.kept.push_back(next_kept);
        reservoirs = std::move(next_reservoirs);
        blue = std::move(next_blue);
        trace.rounds.push_back(std::move(round_record));
        trace.completed_order = round;
    }

    if (trace.completed_order == n_max)
        trace.stop_reason = "order-reached";

    // Final model: the chain limit relabelled onto fraction vertices.
    MinorMap token_model = limit_chain(trace.chain);
    MultiGraph target = halved_farey(trace.completed_order).graph;
    std::map<Vertex, std::string> token_fraction;
    for (const auto& [f, t] : trace.fraction_token)
        token_fraction[t] = f;
    MinorMap final_model;
    final_model.host = g;
    final_model.pattern = target;
    for (const auto& [hv, pv] : token_model.assign)
        final_model.assign[hv] = token_fraction.at(pv);
    ModelValidation fv = validate_model(final_model);
    if (!fv.ok)
        throw input_error("farey_engine: final model failed validation: " + fv.violations[0]);
    trace.final_model = std::move(final_model);
    return trace;
}

} // namespace fareyforge
