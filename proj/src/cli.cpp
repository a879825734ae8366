#include "fareyforge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fareyforge/connectivity.hpp"
#include "fareyforge/engine.hpp"
#include "fareyforge/generators.hpp"
#include "fareyforge/graph_io.hpp"
#include "fareyforge/minors.hpp"
#include "fareyforge/separations.hpp"
#include "fareyforge/tree_tools.hpp"

namespace fareyforge {

using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_budget = 2;
constexpr int exit_usage = 3;

std::uint64_t env_node_budget(std::uint64_t fallback) {
    const char* env = std::getenv("FAREYFORGE_BUDGET_NODES");
    if (!env)
        return fallback;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw input_error("FAREYFORGE_BUDGET_NODES is not an integer");
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw input_error("cannot open output file '" + path + "'");
    file << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// "120000" = node cap, "10s" = wall-clock seconds (engine rounds only).
void parse_budget(const std::string& text, EngineOptions& opts) {
    if (text.empty())
        return;
    if (text.back() == 's') {
        opts.time_budget_seconds = std::stod(text.substr(0, text.size() - 1));
    } else {
        opts.node_budget = std::stoull(text);
    }
}

json cut_to_json(const Cut& c) {
    json j;
    j["sideA"] = json::array();
    for (const Vertex& v : c.side_a)
        j["sideA"].push_back(v);
    j["sideB"] = json::array();
    for (const Vertex& v : c.side_b)
        j["sideB"].push_back(v);
    j["crossing"] = json::array();
    for (const EdgeKey& e : c.crossing)
        j["crossing"].push_back(json::array({e.first, e.second}));
    return j;
}

json failures_to_json(const std::vector<EngineFailure>& fs) {
    json arr = json::array();
    for (const EngineFailure& f : fs)
        arr.push_back(json{{"kind", f.kind}, {"detail", f.detail}});
    return arr;
}

json report_to_json(const GadgetReport& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["valid"] = r.valid;
    j["achieved"] = r.achieved;
    j["endpoints"] = json::object();
    for (const auto& [role, v] : r.endpoints)
        j["endpoints"][role] = v;
    j["payload_strengths"] = r.payload_strengths;
    j["reasons"] = r.reasons;
    return j;
}

json assign_to_json(const MinorMap& m) {
    json branch = json::object();
    for (const auto& [p, vs] : m.branch_sets()) {
        json arr = json::array();
        for (const Vertex& v : vs)
            arr.push_back(v);
        branch[p] = arr;
    }
    return branch;
}

std::string trace_to_json(const EngineTrace& t, int k) {
    json doc;
    doc["format"] = "fareyforge-trace-v1";
    doc["k"] = k;
    doc["order"] = t.completed_order;
    doc["stop_reason"] = t.stop_reason;
    doc["nodes_used"] = t.nodes_used;
    doc["fraction_tokens"] = json::object();
    for (const auto& [f, tok] : t.fraction_token)
        doc["fraction_tokens"][f] = tok;
    doc["rounds"] = json::array();
    for (const EngineRound& r : t.rounds) {
        json jr;
        jr["order"] = r.order;
        jr["min_achieved"] = r.min_achieved;
        jr["extractions"] = json::array();
        for (const EngineExtraction& e : r.extractions) {
            json je;
            je["x"] = e.x_fraction;
            je["y"] = e.y_fraction;
            je["ok"] = e.ok;
            je["route"] = e.route;
            je["achieved"] = e.achieved;
            je["head"] = e.head_fraction;
            je["head_token"] = e.head_token;
            je["failures"] = failures_to_json(e.failures);
            jr["extractions"].push_back(je);
        }
        doc["rounds"].push_back(jr);
    }
    json chain;
    chain["graphs"] = json::array();
    for (const MultiGraph& g : t.chain.graphs)
        chain["graphs"].push_back(json::parse(write_graph(g)));
    chain["kept"] = json::array();
    for (const MultiGraph& g : t.chain.kept)
        chain["kept"].push_back(json::parse(write_graph(g)));
    chain["maps"] = json::array();
    for (const MinorMap& m : t.chain.maps)
        chain["maps"].push_back(json{{"branch_sets", assign_to_json(m)}});
    doc["chain"] = chain;
    doc["final"] = json::parse(write_model(t.final_model));
    return doc.dump(2) + "\n";
}

std::set<Vertex> parse_vertex_list(const std::string& csv) {
    std::set<Vertex> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.insert(item);
    return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace

int run_invocation(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const resource_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite Farey-graph machinery: generators, connectivity, separations, "
                 "minor certificates"};
    app.name("fareyforge");
    app.require_subcommand(1);
    long long seed = 0; // all searches are deterministic; recorded for scripting
    app.add_option("--seed", seed, "seed echoed into outputs (searches are deterministic)");

    // generate / render ------------------------------------------------------
    std::string gen_family, gen_out, gen_format = "json", gen_in;
    int gen_order = 0, gen_branching = 2, gen_height = 1;
    for (const char* name : {"generate", "render"}) {
        CLI::App* cmd = app.add_subcommand(name, name == std::string("render")
                                                     ? "emit DOT for a family or graph file"
                                                     : "construct a named graph family");
        cmd->add_option("family", gen_family,
                        "halved-farey | farey | farey-determinant | tree-join");
        cmd->add_option("--order", gen_order, "order of the Farey construction");
        cmd->add_option("--d", gen_branching, "tree-join branching");
        cmd->add_option("--height", gen_height, "tree-join height");
        cmd->add_option("--in", gen_in, "existing graph file (render / farey-determinant)");
        cmd->add_option("--out", gen_out, "output path (default stdout)");
        cmd->add_option("--format", gen_format, "json | dot");
        cmd->add_flag_callback("--dot", [&] { gen_format = "dot"; });
    }

    // lambda ------------------------------------------------------------------
    std::string lam_in, lam_pair;
    {
        CLI::App* cmd = app.add_subcommand("lambda", "global or pairwise edge-connectivity");
        cmd->add_option("--in", lam_in, "graph file")->required();
        cmd->add_option("--pair", lam_pair, "two vertices u,v");
    }

    // bonds --------------------------------------------------------------------
    std::string bonds_in, bonds_out;
    int bonds_max = 3;
    {
        CLI::App* cmd = app.add_subcommand("bonds", "enumerate bonds up to a crossing size");
        cmd->add_option("--in", bonds_in, "graph file")->required();
        cmd->add_option("--max-size", bonds_max, "largest crossing size")->required();
        cmd->add_option("--out", bonds_out, "output path (default stdout)");
    }

    // classes -------------------------------------------------------------------
    std::string cls_in, cls_out, cls_quotient;
    int cls_k = 1;
    {
        CLI::App* cmd = app.add_subcommand("classes", "~_k classes and their quotient");
        cmd->add_option("--in", cls_in, "graph file")->required();
        cmd->add_option("--k", cls_k, "strength")->required();
        cmd->add_option("--out", cls_out, "output path (default stdout)");
        cmd->add_option("--quotient", cls_quotient, "write the quotient graph here");
    }

    // stree ----------------------------------------------------------------------
    std::string stree_graph, stree_tree, stree_out;
    {
        CLI::App* cmd =
            app.add_subcommand("stree", "build + validate the S-tree of a spanning tree");
        cmd->add_option("--graph", stree_graph, "graph file")->required();
        cmd->add_option("--tree", stree_tree, "spanning tree file")->required();
        cmd->add_option("--out", stree_out, "output path (default stdout)");
    }

    // prune -----------------------------------------------------------------------
    std::string prune_in, prune_out;
    {
        CLI::App* cmd = app.add_subcommand("prune", "recursive pruning labels of a rooted tree");
        cmd->add_option("--in", prune_in, "rooted tree file")->required();
        cmd->add_option("--out", prune_out, "output path (default stdout)");
    }

    // starcomb ----------------------------------------------------------------------
    std::string sc_in, sc_u, sc_out;
    int sc_k = 1;
    std::string sc_budget;
    {
        CLI::App* cmd = app.add_subcommand("starcomb", "star or comb attached to U");
        cmd->add_option("--in", sc_in, "graph file")->required();
        cmd->add_option("--u", sc_u, "comma-separated U vertices")->required();
        cmd->add_option("--k", sc_k, "required leaves/teeth")->required();
        cmd->add_option("--budget", sc_budget, "search node cap");
        cmd->add_option("--out", sc_out, "output path (default stdout)");
    }

    // find-minor ----------------------------------------------------------------------
    std::string fm_host, fm_pattern, fm_out, fm_budget;
    {
        CLI::App* cmd = app.add_subcommand("find-minor", "backtracking minor-embedding search");
        cmd->add_option("--host", fm_host, "host graph file")->required();
        cmd->add_option("--pattern", fm_pattern, "pattern graph file")->required();
        cmd->add_option("--budget", fm_budget, "search node cap");
        cmd->add_option("--out", fm_out, "model output path (default stdout)");
    }

    // verify-model ----------------------------------------------------------------------
    std::string vm_host, vm_model;
    {
        CLI::App* cmd = app.add_subcommand("verify-model", "re-validate a minor model document");
        cmd->add_option("--host", vm_host, "host graph file")->required();
        cmd->add_option("--model", vm_model, "model file")->required();
    }

    // gadget ----------------------------------------------------------------------
    std::string gd_mode, gd_kind, gd_in, gd_out;
    std::vector<std::string> gd_payloads, gd_roles;
    int gd_fan = 1, gd_count = 1, gd_k = 1;
    {
        CLI::App* cmd = app.add_subcommand("gadget", "build or validate gadget graphs");
        cmd->add_option("mode", gd_mode, "build | validate")->required();
        cmd->add_option("--kind", gd_kind, "arrow | arrow-barrage | muscle | muscle-barrage | "
                                           "football | half-plow | plow")
            ->required();
        cmd->add_option("--payload", gd_payloads, "payload graph file (repeatable)");
        cmd->add_option("--in", gd_in, "graph to validate");
        cmd->add_option("--role", gd_roles, "role=vertex (repeatable)");
        cmd->add_option("--fan", gd_fan, "arrow head multiplicity");
        cmd->add_option("--count", gd_count, "barrage size");
        cmd->add_option("--k", gd_k, "strength");
        cmd->add_option("--out", gd_out, "output path (default stdout)");
    }

    // engine ----------------------------------------------------------------------
    std::string en_host, en_trace, en_budget;
    int en_k = 2, en_order = 1, en_smax = -1;
    {
        CLI::App* cmd = app.add_subcommand("engine", "iterative halved-Farey extraction");
        cmd->add_option("--host", en_host, "host graph file")->required();
        cmd->add_option("--k", en_k, "strength")->required();
        cmd->add_option("--order", en_order, "target order")->required();
        cmd->add_option("--budget", en_budget, "node cap or wall-clock \"Ns\"");
        cmd->add_option("--s-max", en_smax, "separator size bound (default k)");
        cmd->add_option("--trace", en_trace, "trace output path (default stdout)");
    }

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough(); // global options may follow the subcommand

    std::vector<std::string> argv_storage = args;
    std::vector<const char*> argv{"fareyforge"};
    for (const std::string& a : argv_storage)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_usage;
    }

    // ---- dispatch -------------------------------------------------------------
    if (app.got_subcommand("generate") || app.got_subcommand("render")) {
        bool dot = app.got_subcommand("render") || gen_format == "dot";
        MultiGraph graph;
        std::optional<ColoredGraph> colored;
        if (!gen_in.empty() && gen_family.empty()) {
            LoadedGraph loaded = read_graph_file(gen_in);
            graph = loaded.graph;
            if (loaded.colors)
                colored = ColoredGraph{loaded.graph, *loaded.colors};
        } else if (gen_family == "halved-farey") {
            colored = halved_farey(gen_order);
            graph = colored->graph;
        } else if (gen_family == "farey") {
            graph = farey_truncation(gen_order);
        } else if (gen_family == "farey-determinant") {
            std::vector<Fraction> vs;
            if (!gen_in.empty()) {
                for (const Vertex& v : read_graph_file(gen_in).graph.vertices())
                    vs.push_back(Fraction::parse(v));
            } else {
                for (const Fraction& f : blue_level_path(gen_order, gen_order))
                    vs.push_back(f);
            }
            graph = farey_by_determinant(vs);
        } else if (gen_family == "tree-join") {
            graph = tree_join(gen_branching, gen_height).graph;
        } else {
            throw input_error("unknown family '" + gen_family + "'");
        }
        std::string text;
        if (dot)
            text = colored ? to_dot(*colored) : to_dot(graph);
        else
            text = colored ? write_graph(*colored) : write_graph(graph);
        emit(text, gen_out, out);
        return exit_ok;
    }

    if (app.got_subcommand("lambda")) {
        MultiGraph g = read_graph_file(lam_in).graph;
        int value;
        if (!lam_pair.empty()) {
            auto vs = parse_vertex_list(lam_pair);
            if (vs.size() != 2)
                throw input_error("--pair expects exactly two vertices");
            value = lambda_pair(g, *vs.begin(), *std::next(vs.begin()));
        } else {
            value = lambda_global(g);
        }
        if (value == lambda_infinite)
            out << "inf\n";
        else
            out << value << "\n";
        return exit_ok;
    }

    if (app.got_subcommand("bonds")) {
        MultiGraph g = read_graph_file(bonds_in).graph;
        auto cuts = enumerate_bonds(g, bonds_max);
        json doc;
        doc["format"] = "fareyforge-cuts-v1";
        doc["cuts"] = json::array();
        for (const Cut& c : cuts)
            doc["cuts"].push_back(cut_to_json(c));
        emit(doc.dump(2) + "\n", bonds_out, out);
        return exit_ok;
    }

    if (app.got_subcommand("classes")) {
        MultiGraph g = read_graph_file(cls_in).graph;
        KClassPartition p = k_classes(g, cls_k);
        json doc;
        doc["format"] = "fareyforge-classes-v1";
        doc["k"] = p.k;
        doc["classes"] = json::array();
        for (const auto& cls : p.classes) {
            json arr = json::array();
            for (const Vertex& v : cls)
                arr.push_back(v);
            doc["classes"].push_back(arr);
        }
        emit(doc.dump(2) + "\n", cls_out, out);
        if (!cls_quotient.empty())
            emit(write_graph(quotient_by_classes(g, p)), cls_quotient, out);
        return exit_ok;
    }

    if (app.got_subcommand("stree")) {
        MultiGraph g = read_graph_file(stree_graph).graph;
        MultiGraph t = read_graph_file(stree_tree).graph;
        STree s = stree_from_spanning_tree(g, t);
        json doc;
        doc["format"] = "fareyforge-stree-v1";
        doc["tree"] = json::parse(write_graph(s.tree));
        doc["alpha"] = json::array();
        for (const auto& [e, sep] : s.alpha) {
            if (e.first > e.second)
                continue; // one canonical orientation per edge
            json ja;
            ja["edge"] = json::array({e.first, e.second});
            ja["sideA"] = json::array();
            for (const Vertex& v : sep.side_a)
                ja["sideA"].push_back(v);
            ja["sideB"] = json::array();
            for (const Vertex& v : sep.side_b)
                ja["sideB"].push_back(v);
            doc["alpha"].push_back(ja);
        }
        emit(doc.dump(2) + "\n", stree_out, out);
        return exit_ok;
    }

    if (app.got_subcommand("prune")) {
        RootedTree t = read_rooted_tree(slurp(prune_in));
        PruneResult r = prune_labels(t);
        json doc;
        doc["format"] = "fareyforge-prune-v1";
        doc["rounds"] = r.rounds;
        doc["branch_order"] = branch_order(t);
        doc["label"] = json::object();
        for (const auto& [v, l] : r.label)
            doc["label"][v] = l;
        emit(doc.dump(2) + "\n", prune_out, out);
        return exit_ok;
    }

    if (app.got_subcommand("starcomb")) {
        MultiGraph g = read_graph_file(sc_in).graph;
        std::uint64_t budget = env_node_budget(5'000'000);
        if (!sc_budget.empty())
            budget = std::stoull(sc_budget);
        StarCombOutcome r = star_comb_search(g, parse_vertex_list(sc_u), sc_k, budget);
        json doc;
        doc["format"] = "fareyforge-starcomb-v1";
        doc["k"] = sc_k;
        if (r.star) {
            doc["kind"] = "star";
            doc["center"] = r.star->center;
            doc["paths"] = r.star->paths;
        } else if (r.comb) {
            doc["kind"] = "comb";
            doc["spine"] = r.comb->spine;
            doc["teeth"] = r.comb->teeth;
        } else {
            doc["kind"] = "none";
            doc["exhausted"] = r.exhausted_exactly;
        }
        emit(doc.dump(2) + "\n", sc_out, out);
        if (r.found())
            return exit_ok;
        return r.exhausted_exactly ? exit_negative : exit_budget;
    }

    if (app.got_subcommand("find-minor")) {
        MultiGraph host = read_graph_file(fm_host).graph;
        MultiGraph pattern = read_graph_file(fm_pattern).graph;
        std::uint64_t budget = env_node_budget(10'000'000);
        if (!fm_budget.empty())
            budget = std::stoull(fm_budget);
        MinorSearchResult r = find_minor(host, pattern, budget);
        if (r.status == SearchStatus::found) {
            emit(write_model(*r.model), fm_out, out);
            return exit_ok;
        }
        return r.status == SearchStatus::absent ? exit_negative : exit_budget;
    }

    if (app.got_subcommand("verify-model")) {
        MultiGraph host = read_graph_file(vm_host).graph;
        LoadedModel doc = read_model(slurp(vm_model));
        ModelValidation v = validate_model(doc.against(host));
        if (v.ok) {
            out << "valid\n";
            return exit_ok;
        }
        for (const std::string& msg : v.violations)
            out << msg << "\n";
        return exit_negative;
    }

    if (app.got_subcommand("gadget")) {
        GadgetKind kind = parse_gadget_kind(gd_kind);
        GadgetReport report;
        MultiGraph graph;
        if (gd_mode == "build") {
            std::vector<MultiGraph> payloads;
            for (const std::string& p : gd_payloads)
                payloads.push_back(read_graph_file(p).graph);
            BuiltGadget built = build_gadget(kind, payloads, {gd_fan, gd_count});
            graph = built.graph;
            report = built.report;
        } else if (gd_mode == "validate") {
            graph = read_graph_file(gd_in).graph;
            std::map<std::string, Vertex> roles;
            for (const std::string& r : gd_roles) {
                auto eq = r.find('=');
                if (eq == std::string::npos)
                    throw input_error("--role expects role=vertex, got '" + r + "'");
                roles[r.substr(0, eq)] = r.substr(eq + 1);
            }
            report = validate_gadget(graph, kind, roles, gd_k);
        } else {
            throw input_error("gadget mode must be build or validate");
        }
        json doc;
        doc["format"] = "fareyforge-gadget-v1";
        doc["report"] = report_to_json(report);
        if (gd_mode == "build")
            doc["graph"] = json::parse(write_graph(graph));
        emit(doc.dump(2) + "\n", gd_out, out);
        return report.valid ? exit_ok : exit_negative;
    }

    if (app.got_subcommand("engine")) {
        MultiGraph host = read_graph_file(en_host).graph;
        EngineOptions opts;
        opts.node_budget = env_node_budget(opts.node_budget);
        opts.s_max = en_smax;
        parse_budget(en_budget, opts);
        EngineTrace trace = farey_engine(host, en_k, en_order, opts);
        emit(trace_to_json(trace, en_k), en_trace, out);
        return trace.completed_order == en_order ? exit_ok : exit_budget;
    }

    err << "no subcommand selected\n";
    return exit_usage;
}

} // namespace

} // namespace fareyforge
