#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <optional>
#include <string>
#include <vector>

#include "perc/errors.hpp"
#include "perc/rng.hpp"

namespace perc {

using VertexId = int;
using EdgeId = int;

enum class Role : uint8_t { plain, middle, peak };

// Undirected edge, stored with a < b.
struct Edge {
    VertexId a{};
    VertexId b{};
    friend bool operator==(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VertexId u, VertexId v) {
    if (u == v) throw invalid_parameter("self-loops are not allowed");
    return u < v ? Edge{u, v} : Edge{v, u};
}

inline constexpr size_t kDefaultVertexBudget = 1'000'000;

// Finite simple graph on dense vertex ids 0..vertex_count-1 with a
// designated origin. Constructor outputs are immutable by convention and
// safe to share across threads.
//
// edge_keys holds one stable 64-bit stream id per edge, consumed by the
// Monte Carlo samplers. Lattice constructors derive keys from geometry so
// that a shared edge receives identical random draws in boxes of different
// radii; everything else uses index-derived keys.
struct Graph {
    int vertex_count = 0;
    std::vector<Edge> edges;
    VertexId origin = 0;
    std::vector<Role> roles;         // empty, or one entry per vertex
    std::vector<uint64_t> edge_keys; // one entry per edge

    bool has_vertex(VertexId v) const { return v >= 0 && v < vertex_count; }

    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
        const Edge e = make_edge(u, v);
        for (size_t i = 0; i < edges.size(); ++i)
            if (edges[i] == e) return static_cast<EdgeId>(i);
        return std::nullopt;
    }

    std::vector<std::vector<VertexId>> adjacency() const {
        std::vector<std::vector<VertexId>> adj(static_cast<size_t>(vertex_count));
        for (const Edge& e : edges) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        return adj;
    }

    int degree(VertexId v) const {
        int d = 0;
        for (const Edge& e : edges) d += (e.a == v) + (e.b == v);
        return d;
    }
};

// Edges of g minus a forced-closed set (conditioning on {edge closed}
// equals deletion, by independence).
inline std::vector<EdgeId> edges_without(const Graph& g, std::span<const EdgeId> forced_closed) {
    std::vector<char> closed(g.edges.size(), 0);
    for (EdgeId e : forced_closed) {
        if (e < 0 || static_cast<size_t>(e) >= g.edges.size())
            throw invalid_parameter("forced_closed: edge index off graph");
        closed[static_cast<size_t>(e)] = 1;
    }
    std::vector<EdgeId> active;
    active.reserve(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (!closed[i]) active.push_back(static_cast<EdgeId>(i));
    return active;
}

inline void assign_index_keys(Graph& g, uint64_t salt = 0x6b65797321ull) {
    g.edge_keys.resize(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i)
        g.edge_keys[i] = hash_combine(salt, i);
}

// BFS distances from src; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, VertexId src) {
    if (!g.has_vertex(src)) throw invalid_parameter("bfs_distances: vertex off graph");
    const auto adj = g.adjacency();
    std::vector<int> dist(static_cast<size_t>(g.vertex_count), -1);
    std::vector<VertexId> queue;
    queue.reserve(static_cast<size_t>(g.vertex_count));
    dist[src] = 0;
    queue.push_back(src);
    for (size_t head = 0; head < queue.size(); ++head) {
        const VertexId v = queue[head];
        for (VertexId w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count == 0) return true;
    const auto dist = bfs_distances(g, 0);
    return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

// Graph distance from the origin; nullopt signals an unreachable vertex.
inline std::optional<int> norm_of(const Graph& g, VertexId v) {
    if (!g.has_vertex(v)) throw invalid_parameter("norm_of: vertex off graph");
    const int d = bfs_distances(g, g.origin)[v];
    if (d < 0) return std::nullopt;
    return d;
}

// Structural sanity for constructor outputs: valid endpoints, no duplicate
// edges, origin listed, connected.
inline void validate_graph(const Graph& g) {
    if (!g.has_vertex(g.origin)) throw invalid_parameter("graph: origin not a vertex");
    if (!g.roles.empty() && g.roles.size() != static_cast<size_t>(g.vertex_count))
        throw invalid_parameter("graph: role table size mismatch");
    if (g.edge_keys.size() != g.edges.size())
        throw invalid_parameter("graph: edge key table size mismatch");
    std::vector<Edge> sorted = g.edges;
    for (const Edge& e : sorted) {
        if (!g.has_vertex(e.a) || !g.has_vertex(e.b) || e.a >= e.b)
            throw invalid_parameter("graph: bad edge");
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const Edge& x, const Edge& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw invalid_parameter("graph: duplicate edge");
    if (!is_connected(g)) throw invalid_parameter("graph: not connected");
}

// Theta graph: peaks v0 and vn joined by n-1 internally disjoint
// two-edge paths through middle vertices v1..v(n-1). Origin is v0.
inline Graph make_theta(int n) {
    if (n < 3) throw invalid_parameter("make_theta: n must be >= 3");
    Graph g;
    g.vertex_count = n + 1;
    g.origin = 0;
    g.roles.assign(static_cast<size_t>(n + 1), Role::middle);
    g.roles[0] = Role::peak;
    g.roles[static_cast<size_t>(n)] = Role::peak;
    g.edges.reserve(static_cast<size_t>(2 * (n - 1)));
    for (VertexId i = 1; i < n; ++i) {
        g.edges.push_back(make_edge(0, i));
        g.edges.push_back(make_edge(i, n));
    }
    assign_index_keys(g);
    validate_graph(g);
    return g;
}

struct GlueResult {
    Graph graph;
    std::vector<VertexId> map1; // old id in g1 -> id in glued graph
    std::vector<VertexId> map2; // old id in g2 -> id in glued graph
    VertexId joint;             // the identified vertex
};

// Identify vertex x of g1 with vertex y of g2. Ids of g1 are preserved,
// g2's remaining vertices follow in their original order, and the joint
// vertex keeps the smaller id (x's). The joint keeps its g1 role; the
// result gets fresh index-derived edge keys.
inline GlueResult glue_mapped(const Graph& g1, VertexId x, const Graph& g2, VertexId y) {
    if (!g1.has_vertex(x)) throw invalid_parameter("glue: x not in first graph");
    if (!g2.has_vertex(y)) throw invalid_parameter("glue: y not in second graph");
    GlueResult res;
    Graph& g = res.graph;
    g.vertex_count = g1.vertex_count + g2.vertex_count - 1;
    g.origin = g1.origin;

    res.map1.resize(static_cast<size_t>(g1.vertex_count));
    for (VertexId v = 0; v < g1.vertex_count; ++v) res.map1[v] = v;
    res.map2.resize(static_cast<size_t>(g2.vertex_count));
    for (VertexId v = 0; v < g2.vertex_count; ++v)
        res.map2[v] = v == y ? x : g1.vertex_count + (v < y ? v : v - 1);
    res.joint = x;

    const bool roles = !g1.roles.empty() || !g2.roles.empty();
    if (roles) {
        g.roles.assign(static_cast<size_t>(g.vertex_count), Role::plain);
        for (VertexId v = 0; v < g1.vertex_count; ++v)
            g.roles[res.map1[v]] = g1.roles.empty() ? Role::plain : g1.roles[v];
        for (VertexId v = 0; v < g2.vertex_count; ++v)
            if (v != y)
                g.roles[res.map2[v]] = g2.roles.empty() ? Role::plain : g2.roles[v];
    }

    g.edges.reserve(g1.edges.size() + g2.edges.size());
    for (const Edge& e : g1.edges) g.edges.push_back(e);
    for (const Edge& e : g2.edges)
        g.edges.push_back(make_edge(res.map2[e.a], res.map2[e.b]));
    assign_index_keys(g);
    validate_graph(g);
    return res;
}

inline Graph glue(const Graph& g1, VertexId x, const Graph& g2, VertexId y) {
    return glue_mapped(g1, x, g2, y).graph;
}

struct TreeGlued {
    Graph graph;
    std::vector<VertexId> center;   // theta vertex index -> id of the level-0 copy
    std::vector<VertexId> nonglued; // vertices still awaiting a copy of their own
    std::vector<VertexId> glued;    // vertices consumed by a gluing step
    std::vector<int> edge_copy;     // edge index -> copy index (0 = center)
    int copies = 1;
};

// Truncation G_k of the tree-glued construction over copies of the theta
// graph P_n: start from one copy, then at every step glue a fresh copy onto
// each non-glued vertex (peaks receive a middle, middles receive a peak;
// the lowest-indexed candidate vertex of the fresh copy is used).
// The output has (n+1)*n^k non-glued vertices.
inline TreeGlued make_tree_glued(int n, int k, size_t vertex_budget = kDefaultVertexBudget) {
    if (n < 4) throw invalid_parameter("make_tree_glued: n must be >= 4");
    if (k < 0) throw invalid_parameter("make_tree_glued: k must be >= 0");

    const Graph theta = make_theta(n);
    TreeGlued out;
    out.graph = theta;
    out.center.resize(static_cast<size_t>(n + 1));
    for (VertexId v = 0; v <= n; ++v) out.center[v] = v;
    out.edge_copy.assign(theta.edges.size(), 0);

    struct Pending {
        VertexId v;
        Role role; // role in its home copy
    };
    std::vector<Pending> frontier;
    for (VertexId v = 0; v <= n; ++v) frontier.push_back({v, theta.roles[v]});

    Graph& g = out.graph;
    for (int step = 1; step <= k; ++step) {
        std::vector<Pending> next;
        next.reserve(frontier.size() * static_cast<size_t>(n));
        for (const Pending& host : frontier) {
            if (static_cast<size_t>(g.vertex_count) + static_cast<size_t>(n) > vertex_budget)
                throw budget_exceeded("make_tree_glued: vertex budget exceeded");
            // Peaks receive a middle vertex (v1), middles a peak (v0).
            const VertexId attach = host.role == Role::peak ? 1 : 0;
            const VertexId base = g.vertex_count;
            const int copy = out.copies++;
            auto remap = [&](VertexId u) {
                return u == attach ? host.v : base + (u < attach ? u : u - 1);
            };
            for (const Edge& e : theta.edges) {
                g.edges.push_back(make_edge(remap(e.a), remap(e.b)));
                out.edge_copy.push_back(copy);
            }
            for (VertexId u = 0; u <= n; ++u) {
                if (u == attach) continue;
                g.roles.push_back(theta.roles[u]);
                next.push_back({remap(u), theta.roles[u]});
            }
            g.vertex_count += n;
            out.glued.push_back(host.v);
        }
        frontier = std::move(next);
    }

    out.nonglued.reserve(frontier.size());
    for (const Pending& p : frontier) out.nonglued.push_back(p.v);
    assign_index_keys(g);
    validate_graph(g);
    return out;
}

} // namespace perc
