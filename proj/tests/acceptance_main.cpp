// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and pinned to the tolerances the
// library promises.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fareyforge/cli.hpp"
#include "fareyforge/connectivity.hpp"
#include "fareyforge/engine.hpp"
#include "fareyforge/generators.hpp"
#include "fareyforge/graph_io.hpp"
#include "fareyforge/minors.hpp"
#include "fareyforge/separations.hpp"
#include "fareyforge/tree_tools.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"
#include "support/small_graphs.hpp"

using namespace fareyforge;
namespace ft = fareyforge::testing;

namespace {

struct Harness {
    int failures = 0;

    void criterion(int number, const std::string& label, double time_limit_s,
                   const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (time_limit_s > 0 && elapsed > time_limit_s) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("time limit ") +
                      std::to_string(time_limit_s) + "s exceeded";
        }
        std::printf("[%s] %02d %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                    elapsed, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok)
            ++failures;
    }
};

std::pair<int, int> color_counts(const ColoredGraph& g) {
    int blue = 0, black = 0;
    for (const auto& [e, c] : g.colors)
        (c == EdgeColor::blue ? blue : black) += 1;
    return {blue, black};
}

bool replay_matches(const EngineTrace& t) {
    MinorMap token_model = limit_chain(t.chain);
    std::map<Vertex, std::string> token_fraction;
    for (const auto& [f, tok] : t.fraction_token)
        token_fraction[tok] = f;
    MinorMap relabelled;
    relabelled.host = t.chain.graphs.front();
    relabelled.pattern = t.final_model.pattern;
    for (const auto& [h, p] : token_model.assign)
        relabelled.assign[h] = token_fraction.at(p);
    return relabelled == t.final_model;
}

// --- criterion bodies ---------------------------------------------------------

bool farey_counts(std::string& detail) {
    for (int n = 0; n <= 12; ++n) {
        ColoredGraph f = halved_farey(n);
        auto [blue, black] = color_counts(f);
        if (f.graph.vertex_count() != (1u << n) + 1 || blue != (1 << n) ||
            black != (1 << n) - 1) {
            detail = "count mismatch at order " + std::to_string(n);
            return false;
        }
    }
    return true;
}

bool definition_cross_validation(std::string& detail) {
    for (int n = 0; n <= 10; ++n) {
        ColoredGraph rec = halved_farey(n);
        std::vector<Fraction> vs;
        for (const Vertex& v : rec.graph.vertices())
            vs.push_back(Fraction::parse(v));
        if (farey_by_determinant(vs) != rec.graph) {
            detail = "halved order " + std::to_string(n);
            return false;
        }
    }
    for (int n = 0; n <= 8; ++n) {
        MultiGraph full = farey_truncation(n);
        std::vector<Fraction> vs;
        for (const Vertex& v : full.vertices())
            vs.push_back(Fraction::parse(v));
        if (farey_by_determinant(vs) != full) {
            detail = "truncation order " + std::to_string(n);
            return false;
        }
    }
    return true;
}

bool halved_to_full_models(std::string& detail) {
    for (int n = 1; n <= 5; ++n) {
        MinorMap m = full_farey_minor_in_halved(n);
        if (!validate_model(m).ok) {
            detail = "model invalid at order " + std::to_string(n);
            return false;
        }
        if (!ft::isomorphic(m.pattern, farey_truncation(n - 1))) {
            detail = "not isomorphic at order " + std::to_string(n);
            return false;
        }
    }
    return true;
}

bool disjoint_cycles(std::string& detail) {
    auto found = two_disjoint_cycles(halved_farey(3).graph);
    if (!found) {
        detail = "no disjoint cycles in the order-3 graph";
        return false;
    }
    if (found->first != std::vector<Vertex>{"0/1", "1/1", "1/2"} ||
        found->second != std::vector<Vertex>{"1/0", "2/1", "3/1"}) {
        detail = "unexpected witness pair";
        return false;
    }
    for (int d = 1; d <= 4; ++d)
        for (int h = 0; h <= 4; ++h)
            if (two_disjoint_cycles(tree_join(d, h).graph)) {
                detail = "apex tree d=" + std::to_string(d) + " h=" + std::to_string(h);
                return false;
            }
    return true;
}

bool k23_surrogates(std::string& detail) {
    MinorSearchResult absent = find_minor(halved_farey(2).graph, ft::complete_bipartite(2, 3));
    if (absent.status != SearchStatus::absent) {
        detail = "K_{2,3} search did not exhaust to absence";
        return false;
    }
    for (int d = 2; d <= 6; ++d) {
        ApexTree t = tree_join(d, 1);
        // Direct subgraph witness: apex and root against the d children.
        for (int c = 0; c < d; ++c) {
            Vertex child = t.root + static_cast<char>('0' + c);
            if (!t.graph.has_edge(t.apex, child) || !t.graph.has_edge(t.root, child)) {
                detail = "missing subgraph edge at d=" + std::to_string(d);
                return false;
            }
        }
        MinorSearchResult found = find_minor(t.graph, ft::complete_bipartite(2, d));
        if (found.status != SearchStatus::found || !validate_model(*found.model).ok) {
            detail = "K_{2," + std::to_string(d) + "} not found in tree_join";
            return false;
        }
    }
    return true;
}

bool pruning_correspondences(std::string& detail) {
    for (int n = 1; n <= 9; ++n) {
        for (const RootedTree& t : ft::rooted_trees_up_to_iso(n)) {
            int rounds = prune_labels(t).rounds;
            int order = branch_order(t);
            if (rounds != order + 1) {
                detail = "rounds != order+1 on a tree with " + std::to_string(n) + " nodes";
                return false;
            }
            for (int h = 0; h <= 4; ++h) {
                bool has = contains_binary_subdivision(t, h).has_value();
                if (has != (order >= h) || has != ft::binary_subdivision_oracle(t, h)) {
                    detail = "subdivision mismatch at n=" + std::to_string(n) +
                             " h=" + std::to_string(h);
                    return false;
                }
            }
        }
    }
    return true;
}

bool quotient_monotone(std::string& detail) {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 200) {
        MultiGraph g = ft::random_multigraph(rng, 10, 3);
        auto parts = ft::random_disjoint_parts(rng, g);
        std::size_t covered = 0;
        for (const auto& p : parts)
            covered += p.size();
        if (g.vertex_count() - covered + parts.size() < 2)
            continue;
        MultiGraph q = contract_sets(g, parts);
        if (lambda_global(q) < lambda_global(g)) {
            detail = "violation after " + std::to_string(done) + " graphs";
            return false;
        }
        ++done;
    }
    return true;
}

bool stree_soundness(std::string& detail) {
    for (int n = 2; n <= 6; ++n) {
        for (const ft::SmallGraph& sg : ft::connected_graphs_up_to_iso(n)) {
            MultiGraph g = sg.to_multigraph();
            auto bonds = enumerate_bonds(g, static_cast<int>(g.edge_count()));
            std::set<std::set<Vertex>> bond_sides;
            for (const Cut& c : bonds) {
                bond_sides.insert(c.side_a);
                bond_sides.insert(c.side_b);
            }
            for (const MultiGraph& t : ft::all_spanning_trees(g)) {
                STree s = stree_from_spanning_tree(g, t);
                std::string why;
                if (!s.validate(&why)) {
                    detail = "invalid S-tree: " + why;
                    return false;
                }
                for (const auto& [e, sep] : s.alpha)
                    if (!bond_sides.count(sep.side_a)) {
                        detail = "alpha image is not a bond (n=" + std::to_string(n) + ")";
                        return false;
                    }
            }
        }
    }
    return true;
}

bool substar_soundness(std::string& detail) {
    // The fixed two-separation example first.
    MultiGraph c6 = ft::cycle_graph({"v1", "v2", "v3", "v4", "v5", "v6"});
    auto rest = [&](const Vertex& v) {
        std::set<Vertex> out;
        for (const Vertex& w : c6.vertices())
            if (w != v)
                out.insert(w);
        return out;
    };
    std::vector<OrientedSeparation> sigma{{{"v1"}, rest("v1")}, {{"v4"}, rest("v4")}};
    SubstarResult fixed = connected_substar(c6, sigma, 0, 2);
    if (fixed.indices.size() != 1) {
        detail = "C6 example kept " + std::to_string(fixed.indices.size()) + " separations";
        return false;
    }

    std::mt19937_64 rng(5150);
    int done = 0;
    while (done < 100) {
        MultiGraph g = ft::random_multigraph(rng, 12, 1);
        if (!is_connected(g) || g.vertex_count() > 12)
            continue;
        std::vector<Cut> bonds;
        try {
            bonds = enumerate_bonds(g, 6);
        } catch (const resource_error&) {
            continue;
        }
        std::vector<OrientedSeparation> star;
        for (const Cut& c : bonds) {
            OrientedSeparation cand{c.side_a, c.side_b};
            if (rng() % 2)
                cand = cand.inverse();
            std::vector<OrientedSeparation> next = star;
            next.push_back(cand);
            if (is_star(next))
                star = std::move(next);
            if (star.size() >= 5)
                break;
        }
        if (star.empty())
            continue;
        std::size_t i_star = rng() % star.size();
        SubstarResult r = connected_substar(g, star, i_star, star.size());
        bool has_i = false;
        for (std::size_t i : r.indices)
            has_i |= i == i_star;
        if (!has_i || !is_connected(induced(g, r.part))) {
            detail = "unsound substar after " + std::to_string(done) + " runs";
            return false;
        }
        for (const Vertex& v : boundary(g, star[i_star].side_b))
            if (!r.part.count(v)) {
                detail = "part misses the i_star boundary";
                return false;
            }
        ++done;
    }
    return true;
}

bool star_comb_exactness(std::string& detail) {
    for (int n = 1; n <= 8; ++n) {
        for (const ft::SmallGraph& sg : ft::connected_graphs_up_to_iso(n)) {
            MultiGraph g = sg.to_multigraph();
            std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                std::set<Vertex> u_set;
                for (int i = 0; i < n; ++i)
                    if ((mask >> i) & 1)
                        u_set.insert(vs[i]);
                for (int k = 1; k <= 4; ++k) {
                    StarCombOutcome r = star_comb_search(g, u_set, k);
                    if (!r.found() && !r.exhausted_exactly) {
                        detail = "budget stop on an 8-vertex host";
                        return false;
                    }
                    bool exists = ft::star_exists_oracle(g, u_set, k) ||
                                  ft::comb_exists_oracle(g, u_set, k);
                    if (r.found() != exists) {
                        detail = "disagreement at n=" + std::to_string(n) +
                                 " k=" + std::to_string(k);
                        return false;
                    }
                    if (r.star && !validate_star(g, *r.star, u_set, k)) {
                        detail = "invalid star witness";
                        return false;
                    }
                    if (r.comb && !validate_comb(g, *r.comb, u_set, k)) {
                        detail = "invalid comb witness";
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool blue_path_family(std::string& detail) {
    const int n = 10;
    std::vector<std::vector<Vertex>> paths;
    for (int k = 0; k <= n; ++k) {
        std::vector<Vertex> p;
        for (const Fraction& f : blue_level_path(n, k))
            p.push_back(f.text());
        paths.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::set<EdgeKey> edges_i;
        for (std::size_t t = 0; t + 1 < paths[i].size(); ++t)
            edges_i.insert(edge_key(paths[i][t], paths[i][t + 1]));
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            if (!order_compatible(paths[i], paths[j])) {
                detail = "order clash between levels " + std::to_string(i) + " and " +
                         std::to_string(j);
                return false;
            }
            for (std::size_t t = 0; t + 1 < paths[j].size(); ++t)
                if (edges_i.count(edge_key(paths[j][t], paths[j][t + 1]))) {
                    detail = "shared edge between levels";
                    return false;
                }
        }
    }
    return true;
}

bool minor_map_algebra(std::string& detail) {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 100; ++trial) {
        MultiGraph g = ft::random_multigraph(rng, 8, 2);
        MinorMap m1 = ft::random_minor_map(rng, g);
        MinorMap m2 = ft::random_minor_map(rng, m1.pattern);
        MinorMap m3 = ft::random_minor_map(rng, m2.pattern);
        if (compose(m3, compose(m2, m1)) != compose(compose(m3, m2), m1)) {
            detail = "associativity failed at trial " + std::to_string(trial);
            return false;
        }

        ModelChain chain = ft::random_chain(rng, g, 5);
        MinorMap limit = limit_chain(chain);
        if (!validate_model(limit).ok) {
            detail = "limit model invalid at trial " + std::to_string(trial);
            return false;
        }
        MinorMap iterated = MinorMap::identity(chain.graphs.front());
        for (const MinorMap& m : chain.maps)
            iterated = compose(m, iterated);
        MinorMap expect;
        expect.host = chain.graphs.front();
        expect.pattern = chain.kept.back();
        for (const auto& [h, p] : iterated.assign)
            if (chain.kept.back().has_vertex(p))
                expect.assign[h] = p;
        if (limit != expect) {
            detail = "limit differs from iterated compose at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool split_case2(std::string& detail) {
    auto r = split_at_separator(ft::barbell_k5(), "a1", "b1", {"s1", "s2"}, 3);
    if (!std::holds_alternative<SplitResult>(r)) {
        detail = std::get<EngineFailure>(r).kind;
        return false;
    }
    const SplitResult& s = std::get<SplitResult>(r);
    if (s.report.case_id != 2) {
        detail = "expected case 2, got " + std::to_string(s.report.case_id);
        return false;
    }
    if (!s.report.all_conditions()) {
        detail = "a split condition failed";
        return false;
    }
    if (s.report.lambda_u_quotient != 4 || s.report.lambda_v_quotient != 4) {
        detail = "quotient strengths " + std::to_string(s.report.lambda_u_quotient) + "/" +
                 std::to_string(s.report.lambda_v_quotient);
        return false;
    }
    // Cross-check the pinned quotient strengths with the exhaustive oracle.
    if (ft::lambda_global_oracle(contract_sets(s.h_u, {s.x_set})) != 4 ||
        ft::lambda_global_oracle(contract_sets(s.h_v, {s.x_set})) != 4) {
        detail = "oracle disagrees on the quotient strength";
        return false;
    }
    return true;
}

bool split_case1(std::string& detail) {
    auto r = split_at_separator(ft::twin_clique_with_bypass(), "a04", "b04", {"s1", "s2"}, 4);
    if (!std::holds_alternative<SplitResult>(r)) {
        detail = std::get<EngineFailure>(r).kind;
        return false;
    }
    const SplitResult& s = std::get<SplitResult>(r);
    if (s.report.case_id != 1) {
        detail = "expected case 1, got " + std::to_string(s.report.case_id);
        return false;
    }
    if (!s.report.all_conditions()) {
        detail = "a split condition failed";
        return false;
    }
    return true;
}

bool engine_end_to_end(std::string& detail) {
    EngineTrace t = farey_engine(ft::complete_graph(12), 8, 2);
    if (t.completed_order != 2) {
        detail = "completed order " + std::to_string(t.completed_order);
        return false;
    }
    if (t.final_model.pattern != halved_farey(2).graph) {
        detail = "pattern is not the order-2 halved graph";
        return false;
    }
    if (!validate_model(t.final_model).ok) {
        detail = "final model failed validation";
        return false;
    }
    if (!replay_matches(t)) {
        detail = "chain replay differs from the recorded model";
        return false;
    }
    return true;
}

// --- criterion 16: fuzz ---------------------------------------------------------

struct FuzzFiles {
    std::vector<std::string> created;

    std::string put(const std::string& name, const std::string& content) {
        std::string path = "acceptance_fuzz_" + name;
        std::ofstream f(path, std::ios::binary);
        f << content;
        created.push_back(path);
        return path;
    }
    ~FuzzFiles() {
        for (const std::string& p : created)
            std::remove(p.c_str());
    }
};

bool fuzz_soundness(std::string& detail) {
    std::mt19937_64 rng(160493);
    FuzzFiles files;
    std::string host_path = files.put("host.json", "");
    std::string pattern_path = files.put("pattern.json", "");
    std::string out_path = files.put("out.json", "");

    auto write_file = [](const std::string& path, const std::string& content) {
        std::ofstream f(path, std::ios::binary);
        f << content;
    };
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    auto run = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_invocation(args, out, err);
        return std::pair<int, std::string>(code, out.str());
    };

    for (int iteration = 0; iteration < 1000; ++iteration) {
        MultiGraph g = ft::random_multigraph(rng, 8, 2);
        write_file(host_path, write_graph(g));
        std::string check = "iteration " + std::to_string(iteration);
        switch (iteration % 7) {
        case 0: { // find-minor + verify-model round trip
            MultiGraph pattern = ft::random_minor_map(rng, g).pattern;
            if (rng() % 3 == 0)
                pattern = ft::random_multigraph(rng, 5, 1);
            write_file(pattern_path, write_graph(pattern));
            auto [code, out] = run({"find-minor", "--host", host_path, "--pattern", pattern_path,
                                    "--out", out_path});
            if (code == 0) {
                auto [vcode, vout] = run({"verify-model", "--host", host_path, "--model",
                                          out_path});
                if (vcode != 0) {
                    detail = check + ": minor witness failed re-validation";
                    return false;
                }
            }
            break;
        }
        case 1: { // starcomb witnesses re-validate
            std::set<Vertex> u_set;
            for (const Vertex& v : g.vertices())
                if (rng() % 2)
                    u_set.insert(v);
            if (u_set.empty())
                u_set.insert(*g.vertices().begin());
            std::string u_csv;
            for (const Vertex& v : u_set)
                u_csv += (u_csv.empty() ? "" : ",") + v;
            int k = 1 + static_cast<int>(rng() % 3);
            auto [code, out] = run({"starcomb", "--in", host_path, "--u", u_csv, "--k",
                                    std::to_string(k), "--out", out_path});
            if (code == 0) {
                auto doc = nlohmann::json::parse(slurp(out_path));
                if (doc["kind"] == "star") {
                    StarWitness w;
                    w.center = doc["center"].get<std::string>();
                    for (const auto& p : doc["paths"])
                        w.paths.push_back(p.get<std::vector<std::string>>());
                    if (!validate_star(g, w, u_set, k)) {
                        detail = check + ": star witness failed re-validation";
                        return false;
                    }
                } else {
                    CombWitness w;
                    w.spine = doc["spine"].get<std::vector<std::string>>();
                    for (const auto& p : doc["teeth"])
                        w.teeth.push_back(p.get<std::vector<std::string>>());
                    if (!validate_comb(g, w, u_set, k)) {
                        detail = check + ": comb witness failed re-validation";
                        return false;
                    }
                }
            }
            break;
        }
        case 2: { // bonds really are bonds
            auto [code, out] = run({"bonds", "--in", host_path, "--max-size", "4"});
            if (code != 0)
                break; // disconnected host: input error path
            auto doc = nlohmann::json::parse(out);
            for (const auto& cut : doc["cuts"]) {
                std::set<Vertex> side;
                for (const auto& v : cut["sideA"])
                    side.insert(v.get<std::string>());
                if (!ft::is_bond_oracle(g, side)) {
                    detail = check + ": emitted cut is not a bond";
                    return false;
                }
            }
            break;
        }
        case 3: { // classes agree with pairwise lambda
            int k = 1 + static_cast<int>(rng() % 3);
            auto [code, out] = run({"classes", "--in", host_path, "--k", std::to_string(k)});
            if (code != 0)
                break;
            auto doc = nlohmann::json::parse(out);
            std::map<Vertex, int> cls;
            int id = 0;
            for (const auto& arr : doc["classes"]) {
                for (const auto& v : arr)
                    cls[v.get<std::string>()] = id;
                ++id;
            }
            for (const Vertex& x : g.vertices())
                for (const Vertex& y : g.vertices()) {
                    if (x >= y)
                        continue;
                    bool together = cls.at(x) == cls.at(y);
                    bool strong = ft::lambda_pair_oracle(g, x, y) >= k;
                    if (together != strong) {
                        detail = check + ": class partition disagrees with the cut oracle";
                        return false;
                    }
                }
            break;
        }
        case 4: { // stree alpha images are bonds
            if (!is_connected(g))
                break;
            auto trees = ft::all_spanning_trees(g);
            if (trees.empty())
                break;
            const MultiGraph& t = trees[rng() % trees.size()];
            std::string tree_path = files.put("tree" + std::to_string(iteration) + ".json",
                                              write_graph(t));
            auto [code, out] = run({"stree", "--graph", host_path, "--tree", tree_path});
            if (code != 0) {
                detail = check + ": stree failed on a legal spanning tree";
                return false;
            }
            auto doc = nlohmann::json::parse(out);
            for (const auto& entry : doc["alpha"]) {
                std::set<Vertex> side;
                for (const auto& v : entry["sideA"])
                    side.insert(v.get<std::string>());
                if (!ft::is_bond_oracle(g, side)) {
                    detail = check + ": alpha image is not a bond";
                    return false;
                }
            }
            break;
        }
        case 5: { // gadget build emits a valid certificate
            GadgetKind kind = rng() % 2 == 0 ? GadgetKind::muscle : GadgetKind::arrow;
            MultiGraph payload = ft::random_multigraph(rng, 5, 1);
            if (!is_connected(payload) || payload.vertex_count() < 2)
                break;
            std::string payload_path =
                files.put("payload" + std::to_string(iteration) + ".json", write_graph(payload));
            auto [code, out] = run({"gadget", "build", "--kind", to_string(kind), "--payload",
                                    payload_path});
            if (code == 0) {
                auto doc = nlohmann::json::parse(out);
                MultiGraph built = read_graph(doc["graph"].dump()).graph;
                std::map<std::string, Vertex> roles;
                for (const auto& [role, v] : doc["report"]["endpoints"].items())
                    roles[role] = v.get<std::string>();
                int achieved = doc["report"]["achieved"].get<int>();
                if (!validate_gadget(built, kind, roles, achieved).valid) {
                    detail = check + ": built gadget failed re-validation";
                    return false;
                }
            }
            break;
        }
        default: { // engine traces re-validate end to end
            if (!is_connected(g) || g.distinct_edge_count() == 0)
                break;
            int k = 1 + static_cast<int>(rng() % 3);
            auto [code, out] = run({"engine", "--host", host_path, "--k", std::to_string(k),
                                    "--order", "2", "--trace", out_path});
            if (code != 0 && code != 2) {
                detail = check + ": engine returned an error code";
                return false;
            }
            auto doc = nlohmann::json::parse(slurp(out_path));
            std::string final_path = files.put("final" + std::to_string(iteration) + ".json",
                                               doc["final"].dump());
            auto [vcode, vout] = run({"verify-model", "--host", host_path, "--model",
                                      final_path});
            if (vcode != 0) {
                detail = check + ": engine model failed re-validation";
                return false;
            }
            break;
        }
        }
    }
    return true;
}

} // namespace

int main() {
    Harness h;
    h.criterion(1, "halved Farey counts through order 12", 1.0, farey_counts);
    h.criterion(2, "recursive and determinant definitions agree", 0, definition_cross_validation);
    h.criterion(3, "full truncation models inside the halved graph", 10.0, halved_to_full_models);
    h.criterion(4, "two disjoint cycles found and refuted", 0, disjoint_cycles);
    h.criterion(5, "K_{2,k} non-minor and subgraph surrogates", 0, k23_surrogates);
    h.criterion(6, "pruning rounds, branch order and subdivisions", 60.0,
                pruning_correspondences);
    h.criterion(7, "quotients never lose edge-connectivity", 0, quotient_monotone);
    h.criterion(8, "S-trees of all small spanning trees are sound", 0, stree_soundness);
    h.criterion(9, "connected substars stay sound", 0, substar_soundness);
    h.criterion(10, "star-comb search matches the witness oracle", 0, star_comb_exactness);
    h.criterion(11, "blue level paths are disjoint and order-compatible", 0, blue_path_family);
    h.criterion(12, "minor-map algebra: associativity and chain limits", 0, minor_map_algebra);
    h.criterion(13, "separator split case 2 on the barbell", 0, split_case2);
    h.criterion(14, "separator split case 1 on the twin cliques", 0, split_case1);
    h.criterion(15, "engine reaches order 2 on K12 with a replayable trace", 30.0,
                engine_end_to_end);
    h.criterion(16, "fuzzed invocations never emit invalid witnesses", 0, fuzz_soundness);
    if (h.failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", h.failures);
    return 1;
}
