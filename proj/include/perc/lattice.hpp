#pragma once

#include <array>
#include <cstdlib>
#include <span>
#include <vector>

#include "perc/graph.hpp"

namespace perc {

namespace detail {

inline uint64_t coord_key(uint64_t salt, std::span<const int> coords, int extra) {
    uint64_t h = hash_mix(salt);
    for (int c : coords) h = hash_combine(h, static_cast<uint64_t>(static_cast<int64_t>(c)));
    return hash_combine(h, static_cast<uint64_t>(static_cast<int64_t>(extra)));
}

} // namespace detail

// Finite L1 ball of Z^d with nearest-neighbor edges. The L1 norm is the
// graph distance of Z^d, so the ball is exactly the graph-metric ball.
// Vertices are numbered in lexicographic coordinate order; e1 is the
// neighbor (1,0,...,0) of the origin.
struct BoxGraph {
    Graph graph;
    int d = 0;
    int radius = 0;
    bool origin_edge_removed = false;
    VertexId origin = -1;
    VertexId e1 = -1;
    std::vector<std::vector<int>> coords; // id -> lattice point

    std::optional<VertexId> vertex_at(std::span<const int> point) const {
        auto it = std::lower_bound(coords.begin(), coords.end(), point,
                                   [](const std::vector<int>& a, std::span<const int> b) {
                                       return std::lexicographical_compare(a.begin(), a.end(),
                                                                           b.begin(), b.end());
                                   });
        if (it == coords.end() || !std::equal(it->begin(), it->end(), point.begin(), point.end()))
            return std::nullopt;
        return static_cast<VertexId>(it - coords.begin());
    }
};

inline BoxGraph make_box(int d, int r, bool remove_origin_edge,
                         size_t vertex_budget = kDefaultVertexBudget) {
    if (d < 1) throw invalid_parameter("make_box: d must be >= 1");
    if (r < 1) throw invalid_parameter("make_box: r must be >= 1");

    BoxGraph box;
    box.d = d;
    box.radius = r;
    box.origin_edge_removed = remove_origin_edge;

    // Lexicographic enumeration of {x : |x|_1 <= r}.
    std::vector<int> point(static_cast<size_t>(d), 0);
    auto emit = [&](auto&& self, int dim, int remaining) -> void {
        if (dim == d) {
            if (box.coords.size() >= vertex_budget)
                throw budget_exceeded("make_box: vertex budget exceeded");
            box.coords.push_back(point);
            return;
        }
        for (int x = -remaining; x <= remaining; ++x) {
            point[dim] = x;
            self(self, dim + 1, remaining - std::abs(x));
        }
    };
    emit(emit, 0, r);

    Graph& g = box.graph;
    g.vertex_count = static_cast<int>(box.coords.size());

    const std::vector<int> zero(static_cast<size_t>(d), 0);
    std::vector<int> e1c = zero;
    e1c[0] = 1;
    box.origin = *box.vertex_at(zero);
    box.e1 = *box.vertex_at(e1c);
    g.origin = box.origin;

    std::vector<int> neighbor(static_cast<size_t>(d));
    for (VertexId v = 0; v < g.vertex_count; ++v) {
        for (int dim = 0; dim < d; ++dim) {
            neighbor = box.coords[v];
            neighbor[dim] += 1; // +unit step is lexicographically larger
            if (auto w = box.vertex_at(neighbor)) {
                g.edges.push_back(Edge{v, *w});
                g.edge_keys.push_back(detail::coord_key(0xB0A5ull + static_cast<uint64_t>(d),
                                                        box.coords[v], dim));
            }
        }
    }

    validate_graph(g);
    if (remove_origin_edge) {
        // Surgical deletion after validation: at r=1 it isolates e1, which
        // is the intended degenerate geometry (the connection probability
        // is then identically zero).
        const auto e = g.find_edge(box.origin, box.e1);
        if (!e) throw invalid_parameter("make_box: origin edge missing");
        g.edges.erase(g.edges.begin() + *e);
        g.edge_keys.erase(g.edge_keys.begin() + *e);
    }
    return box;
}

// Triangular lattice patch in axial coordinates (q, s): neighbors are
// (+-1,0), (0,+-1), (1,-1), (-1,1); graph distance from the origin is
// (|q| + |s| + |q+s|) / 2. The patch holds every vertex within graph
// distance r. e_t is the designated neighbor (1,0) and `triangle` is the
// origin-incident triangle {o, (1,0), (0,1)}.
struct TriangularPatch {
    Graph graph;
    int radius = 0;
    VertexId e_t = -1;
    std::array<VertexId, 3> triangle{};
    std::vector<std::array<int, 2>> axial; // id -> (q, s)

    std::optional<VertexId> vertex_at(int q, int s) const {
        const std::array<int, 2> key{q, s};
        auto it = std::lower_bound(axial.begin(), axial.end(), key);
        if (it == axial.end() || *it != key) return std::nullopt;
        return static_cast<VertexId>(it - axial.begin());
    }
};

inline int tri_distance(int q, int s) {
    return (std::abs(q) + std::abs(s) + std::abs(q + s)) / 2;
}

inline TriangularPatch make_triangular_patch(int r, size_t vertex_budget = kDefaultVertexBudget) {
    if (r < 1) throw invalid_parameter("make_triangular_patch: r must be >= 1");
    TriangularPatch patch;
    patch.radius = r;
    for (int q = -r; q <= r; ++q)
        for (int s = -r; s <= r; ++s)
            if (tri_distance(q, s) <= r) {
                if (patch.axial.size() >= vertex_budget)
                    throw budget_exceeded("make_triangular_patch: vertex budget exceeded");
                patch.axial.push_back({q, s});
            }

    Graph& g = patch.graph;
    g.vertex_count = static_cast<int>(patch.axial.size());
    g.origin = *patch.vertex_at(0, 0);
    patch.e_t = *patch.vertex_at(1, 0);
    patch.triangle = {g.origin, patch.e_t, *patch.vertex_at(0, 1)};

    // Lexicographically increasing neighbor directions only, so each edge
    // is emitted once with a < b.
    static constexpr std::array<std::array<int, 2>, 3> dirs{{{0, 1}, {1, -1}, {1, 0}}};
    for (VertexId v = 0; v < g.vertex_count; ++v) {
        const auto [q, s] = patch.axial[v];
        for (size_t dir = 0; dir < dirs.size(); ++dir) {
            if (auto w = patch.vertex_at(q + dirs[dir][0], s + dirs[dir][1])) {
                g.edges.push_back(Edge{v, *w});
                const std::array<int, 2> qc{q, s};
                g.edge_keys.push_back(
                    detail::coord_key(0x7121ull, std::span<const int>(qc), static_cast<int>(dir)));
            }
        }
    }
    validate_graph(g);
    return patch;
}

// Hexagonal lattice patch in the brick-wall representation: vertices of
// Z^2 with all horizontal edges and a vertical edge {(x,y),(x,y+1)} exactly
// when x+y is even, giving degree 3 everywhere. The patch holds every
// vertex within graph distance r of the origin; e_h is the neighbor (1,0).
struct HexagonalPatch {
    Graph graph;
    int radius = 0;
    VertexId e_h = -1;
    std::vector<std::array<int, 2>> coords; // id -> (x, y)

    std::optional<VertexId> vertex_at(int x, int y) const {
        const std::array<int, 2> key{x, y};
        auto it = std::lower_bound(coords.begin(), coords.end(), key);
        if (it == coords.end() || *it != key) return std::nullopt;
        return static_cast<VertexId>(it - coords.begin());
    }
};

inline HexagonalPatch make_hexagonal_patch(int r, size_t vertex_budget = kDefaultVertexBudget) {
    if (r < 1) throw invalid_parameter("make_hexagonal_patch: r must be >= 1");

    // BFS over the infinite-lattice rule; a geodesic of length <= r cannot
    // leave the L-infinity box of side r.
    const int side = 2 * r + 1;
    auto idx = [&](int x, int y) { return (x + r) * side + (y + r); };
    std::vector<int> dist(static_cast<size_t>(side) * side, -1);
    std::vector<std::array<int, 2>> queue;
    queue.push_back({0, 0});
    dist[idx(0, 0)] = 0;
    auto brick_neighbors = [](int x, int y) {
        std::vector<std::array<int, 2>> out = {{x - 1, y}, {x + 1, y}};
        if ((x + y) % 2 == 0)
            out.push_back({x, y + 1});
        else
            out.push_back({x, y - 1});
        return out;
    };
    for (size_t head = 0; head < queue.size(); ++head) {
        const auto [x, y] = queue[head];
        const int dv = dist[idx(x, y)];
        if (dv == r) continue;
        for (const auto& [nx, ny] : brick_neighbors(x, y)) {
            if (std::abs(nx) > r || std::abs(ny) > r) continue;
            if (dist[idx(nx, ny)] >= 0) continue;
            dist[idx(nx, ny)] = dv + 1;
            queue.push_back({nx, ny});
        }
    }

    HexagonalPatch patch;
    patch.radius = r;
    for (int x = -r; x <= r; ++x)
        for (int y = -r; y <= r; ++y)
            if (dist[idx(x, y)] >= 0) {
                if (patch.coords.size() >= vertex_budget)
                    throw budget_exceeded("make_hexagonal_patch: vertex budget exceeded");
                patch.coords.push_back({x, y});
            }

    Graph& g = patch.graph;
    g.vertex_count = static_cast<int>(patch.coords.size());
    g.origin = *patch.vertex_at(0, 0);
    patch.e_h = *patch.vertex_at(1, 0);

    for (VertexId v = 0; v < g.vertex_count; ++v) {
        const auto [x, y] = patch.coords[v];
        const std::array<int, 2> xc{x, y};
        if (auto w = patch.vertex_at(x + 1, y)) {
            g.edges.push_back(Edge{v, *w});
            g.edge_keys.push_back(detail::coord_key(0x4e3cull, std::span<const int>(xc), 0));
        }
        if ((x + y) % 2 == 0) {
            if (auto w = patch.vertex_at(x, y + 1)) {
                g.edges.push_back(Edge{v, *w});
                g.edge_keys.push_back(detail::coord_key(0x4e3cull, std::span<const int>(xc), 1));
            }
        }
    }
    validate_graph(g);
    return patch;
}

} // namespace perc
