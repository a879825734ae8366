#include "fareyforge/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fareyforge {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "fareyforge-graph-v1";

std::string quote_dot(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

ColoredGraph LoadedGraph::colored() const {
    if (!colors)
        throw input_error("graph document carries no colors");
    ColoredGraph cg{graph, *colors};
    cg.check();
    return cg;
}

LoadedGraph read_graph(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw parse_error(std::string("graph document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != kFormat)
        throw parse_error("graph document missing \"format\":\"" + std::string(kFormat) + "\"");
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw parse_error("graph document missing \"vertices\" array");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw parse_error("graph document missing \"edges\" array");

    LoadedGraph out;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_string() || v.get<std::string>().empty())
            throw parse_error("vertex entry " + v.dump() + " is not a nonempty string");
        if (out.graph.has_vertex(v.get<std::string>()))
            throw parse_error("duplicate vertex '" + v.get<std::string>() + "'");
        out.graph.add_vertex(v.get<std::string>());
    }
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw parse_error("edge entry " + e.dump() + " is not a 2-element token array");
        Vertex a = e[0].get<std::string>();
        Vertex b = e[1].get<std::string>();
        if (a == b)
            throw parse_error("loop edge [\"" + a + "\",\"" + b + "\"]");
        if (!out.graph.has_vertex(a) || !out.graph.has_vertex(b))
            throw parse_error("edge [\"" + a + "\",\"" + b + "\"] has a dangling endpoint");
        out.graph.add_edge(a, b);
    }
    if (doc.contains("colors")) {
        if (!doc["colors"].is_object())
            throw parse_error("\"colors\" must be an object");
        if (!out.graph.is_simple())
            throw parse_error("\"colors\" is legal only when no edge repeats");
        std::map<EdgeKey, EdgeColor> colors;
        for (const auto& [key, val] : doc["colors"].items()) {
            auto bar = key.find('|');
            if (bar == std::string::npos)
                throw parse_error("color key '" + key + "' is not \"minToken|maxToken\"");
            Vertex a = key.substr(0, bar);
            Vertex b = key.substr(bar + 1);
            if (a.empty() || b.empty() || a >= b)
                throw parse_error("color key '" + key + "' is not \"minToken|maxToken\"");
            if (!out.graph.has_edge(a, b))
                throw parse_error("color key '" + key + "' names a missing edge");
            std::string c = val.is_string() ? val.get<std::string>() : val.dump();
            if (c == "blue")
                colors[edge_key(a, b)] = EdgeColor::blue;
            else if (c == "black")
                colors[edge_key(a, b)] = EdgeColor::black;
            else
                throw parse_error("color '" + c + "' for '" + key + "' is not blue/black");
        }
        for (const auto& [e, m] : out.graph.edges())
            if (!colors.count(e))
                throw parse_error("edge {" + e.first + "," + e.second + "} has no color entry");
        out.colors = std::move(colors);
    }
    return out;
}

LoadedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_graph(buf.str());
}

namespace {

json graph_to_json(const MultiGraph& g, const std::map<EdgeKey, EdgeColor>* colors) {
    json doc;
    doc["format"] = kFormat;
    doc["vertices"] = json::array();
    for (const Vertex& v : g.vertices())
        doc["vertices"].push_back(v);
    doc["edges"] = json::array();
    for (const auto& [e, m] : g.edges())
        for (int i = 0; i < m; ++i)
            doc["edges"].push_back(json::array({e.first, e.second}));
    if (colors) {
        json cm = json::object();
        for (const auto& [e, c] : *colors)
            cm[e.first + "|" + e.second] = c == EdgeColor::blue ? "blue" : "black";
        doc["colors"] = cm;
    }
    return doc;
}

} // namespace

std::string write_graph(const MultiGraph& g) {
    return graph_to_json(g, nullptr).dump(2) + "\n";
}

std::string write_graph(const ColoredGraph& g) {
    g.check();
    return graph_to_json(g.graph, &g.colors).dump(2) + "\n";
}

std::string to_dot(const MultiGraph& g, const std::map<EdgeKey, EdgeColor>* colors,
                   const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (const Vertex& v : g.vertices())
        out << "  " << quote_dot(v) << ";\n";
    for (const auto& [e, m] : g.edges()) {
        bool blue = colors && colors->count(e) && colors->at(e) == EdgeColor::blue;
        for (int i = 0; i < m; ++i) {
            out << "  " << quote_dot(e.first) << " -- " << quote_dot(e.second);
            if (blue)
                out << " [color=blue]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace fareyforge
