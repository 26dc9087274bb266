#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "perc/graph.hpp"

namespace perc {

inline const char* role_name(Role r) {
    switch (r) {
        case Role::peak: return "peak";
        case Role::middle: return "middle";
        default: return "plain";
    }
}

inline Role role_from_name(const std::string& s) {
    if (s == "peak") return Role::peak;
    if (s == "middle") return Role::middle;
    if (s == "plain") return Role::plain;
    throw invalid_parameter("unknown role '" + s + "'");
}

// Line-based text format:
//   v <vertex-count>
//   o <origin-id>
//   e <u> <v>          one line per edge, in edge order
//   r <v> <role>       optional, for vertices with a non-plain role
inline void write_graph(std::ostream& out, const Graph& g) {
    out << "v " << g.vertex_count << '\n';
    out << "o " << g.origin << '\n';
    for (const Edge& e : g.edges) out << "e " << e.a << ' ' << e.b << '\n';
    if (!g.roles.empty())
        for (VertexId v = 0; v < g.vertex_count; ++v)
            if (g.roles[v] != Role::plain)
                out << "r " << v << ' ' << role_name(g.roles[v]) << '\n';
}

inline std::string graph_to_string(const Graph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

// Loaded graphs get index-derived edge keys; runs on a loaded graph are
// reproducible but not coupled to any lattice family.
inline Graph read_graph(std::istream& in) {
    Graph g;
    bool have_v = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        auto fail = [&](const std::string& why) {
            throw invalid_parameter("graph line " + std::to_string(lineno) + ": " + why);
        };
        if (tag == "v") {
            if (!(ls >> g.vertex_count) || g.vertex_count <= 0) fail("bad vertex count");
            have_v = true;
        } else if (tag == "o") {
            if (!(ls >> g.origin)) fail("bad origin");
        } else if (tag == "e") {
            VertexId a, b;
            if (!(ls >> a >> b)) fail("bad edge");
            g.edges.push_back(make_edge(a, b));
        } else if (tag == "r") {
            VertexId v;
            std::string role;
            if (!(ls >> v >> role)) fail("bad role");
            if (!have_v) fail("role before vertex count");
            if (g.roles.empty()) g.roles.assign(static_cast<size_t>(g.vertex_count), Role::plain);
            if (v < 0 || v >= g.vertex_count) fail("role vertex out of range");
            g.roles[static_cast<size_t>(v)] = role_from_name(role);
        } else {
            fail("unknown tag '" + tag + "'");
        }
    }
    if (!have_v) throw invalid_parameter("graph: missing 'v' header");
    assign_index_keys(g);
    validate_graph(g);
    return g;
}

inline Graph graph_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
}

} // namespace perc
