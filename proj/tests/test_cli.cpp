#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fareyforge/cli.hpp"
#include "fareyforge/generators.hpp"
#include "fareyforge/graph_io.hpp"
#include "fareyforge/minors.hpp"
#include "support/builders.hpp"

using namespace fareyforge;
namespace ft = fareyforge::testing;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_invocation(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;

    explicit TempFile(const std::string& name, const std::string& content = "") {
        path = std::string("cli_tmp_") + name;
        if (!content.empty()) {
            std::ofstream f(path, std::ios::binary);
            f << content;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("generate and render families") {
    Invocation gen = run({"generate", "halved-farey", "--order", "2"});
    CHECK(gen.code == 0);
    LoadedGraph g = read_graph(gen.out);
    CHECK(g.graph.vertex_count() == 5);
    REQUIRE(g.colors.has_value());

    Invocation dot = run({"render", "halved-farey", "--order", "4", "--dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.find("[color=blue]") != std::string::npos);

    Invocation tree = run({"generate", "tree-join", "--d", "3", "--height", "1"});
    CHECK(tree.code == 0);
    CHECK(read_graph(tree.out).graph.vertex_count() == 5);

    CHECK(run({"generate", "mystery"}).code == 3);
    CHECK(run({"nonsense"}).code == 3);
}

TEST_CASE("same invocation twice is byte-identical") {
    Invocation a = run({"generate", "farey", "--order", "3", "--seed", "7"});
    Invocation b = run({"generate", "farey", "--order", "3", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("lambda bonds and classes read graph files") {
    TempFile k4("k4.json", write_graph(ft::complete_graph(4)));
    Invocation lam = run({"lambda", "--in", k4.path});
    CHECK(lam.code == 0);
    CHECK(lam.out == "3\n");
    CHECK(run({"lambda", "--in", k4.path, "--pair", "v1,v3"}).out == "3\n");

    Invocation bonds = run({"bonds", "--in", k4.path, "--max-size", "3"});
    CHECK(bonds.code == 0);
    CHECK(bonds.out.find("fareyforge-cuts-v1") != std::string::npos);

    Invocation classes = run({"classes", "--in", k4.path, "--k", "2"});
    CHECK(classes.code == 0);
    CHECK(classes.out.find("\"k\": 2") != std::string::npos);

    CHECK(run({"lambda", "--in", "no_such_file.json"}).code == 3);
}

TEST_CASE("stree subcommand emits the documented format") {
    MultiGraph c4 = ft::cycle_graph({"a", "b", "c", "d"});
    TempFile graph("c4.json", write_graph(c4));
    TempFile tree("c4tree.json", write_graph(ft::path_graph({"a", "b", "c", "d"})));
    Invocation r = run({"stree", "--graph", graph.path, "--tree", tree.path});
    CHECK(r.code == 0);
    CHECK(r.out.find("fareyforge-stree-v1") != std::string::npos);
    CHECK(r.out.find("\"alpha\"") != std::string::npos);

    TempFile nontree("nontree.json", write_graph(c4));
    CHECK(run({"stree", "--graph", graph.path, "--tree", nontree.path}).code == 3);
}

TEST_CASE("prune subcommand") {
    TempFile rtree("rtree.json", R"({"format":"fareyforge-rtree-v1","root":"r",
        "parent":{"a":"r","b":"r","c":"a","d":"a"}})");
    Invocation r = run({"prune", "--in", rtree.path});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"rounds\": 2") != std::string::npos);
    CHECK(r.out.find("\"branch_order\": 1") != std::string::npos);
}

TEST_CASE("starcomb exit codes") {
    MultiGraph path = ft::path_graph({"a", "b", "c", "d"});
    TempFile file("path.json", write_graph(path));
    CHECK(run({"starcomb", "--in", file.path, "--u", "a,b,c", "--k", "3"}).code == 0);
    CHECK(run({"starcomb", "--in", file.path, "--u", "a,b", "--k", "3"}).code == 1);
}

TEST_CASE("find-minor and verify-model round trip") {
    TempFile host("host.json", write_graph(ft::cycle_graph({"a", "b", "c", "d"})));
    TempFile pattern("pattern.json", write_graph(ft::cycle_graph({"x", "y", "z"})));
    TempFile model("model.json");
    Invocation found = run({"find-minor", "--host", host.path, "--pattern", pattern.path,
                            "--out", model.path});
    CHECK(found.code == 0);
    Invocation verify = run({"verify-model", "--host", host.path, "--model", model.path});
    CHECK(verify.code == 0);
    CHECK(verify.out == "valid\n");

    TempFile tree("tree.json", write_graph(ft::path_graph({"a", "b", "c", "d"})));
    CHECK(run({"find-minor", "--host", tree.path, "--pattern", pattern.path}).code == 1);

    // A wrong model re-validates to exit 1.
    MinorMap wrong;
    wrong.host = ft::path_graph({"a", "b", "c", "d"});
    wrong.pattern = ft::cycle_graph({"x", "y", "z"});
    wrong.assign = {{"a", "x"}, {"b", "y"}, {"c", "z"}};
    TempFile bad("bad.json", write_model(wrong));
    CHECK(run({"verify-model", "--host", tree.path, "--model", bad.path}).code == 1);
}

TEST_CASE("gadget build and validate") {
    TempFile payload("k4.json", write_graph(ft::complete_graph(4)));
    Invocation built = run({"gadget", "build", "--kind", "muscle", "--payload", payload.path});
    CHECK(built.code == 0);
    CHECK(built.out.find("\"valid\": true") != std::string::npos);

    TempFile k6("k6.json", write_graph(ft::complete_graph(6)));
    Invocation valid = run({"gadget", "validate", "--kind", "football", "--in", k6.path,
                            "--role", "u=v1", "--role", "v=v2", "--k", "3"});
    CHECK(valid.code == 0);
    Invocation invalid = run({"gadget", "validate", "--kind", "football", "--in", k6.path,
                              "--role", "u=v1", "--role", "v=v2", "--k", "4"});
    CHECK(invalid.code == 1);
}

TEST_CASE("engine subcommand writes a replayable trace") {
    TempFile host("k8.json", write_graph(ft::complete_graph(8)));
    TempFile trace("trace.json");
    Invocation r = run({"engine", "--host", host.path, "--k", "4", "--order", "1", "--trace",
                        trace.path});
    CHECK(r.code == 0);

    std::ifstream in(trace.path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("fareyforge-trace-v1") != std::string::npos);
    CHECK(buf.str().find("\"order\": 1") != std::string::npos);

    // The embedded final model re-validates against the host.
    auto doc = nlohmann::json::parse(buf.str());
    TempFile final_model("final.json", doc["final"].dump());
    CHECK(run({"verify-model", "--host", host.path, "--model", final_model.path}).code == 0);
}

TEST_CASE("engine early stop exits 2") {
    TempFile host("tree.json", write_graph(tree_join(3, 3).graph));
    TempFile trace("trace2.json");
    Invocation r = run({"engine", "--host", host.path, "--k", "2", "--order", "3", "--trace",
                        trace.path});
    CHECK(r.code == 2);
}
