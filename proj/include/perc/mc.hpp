#pragma once

#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "perc/estimate.hpp"
#include "perc/graph.hpp"
#include "perc/lattice.hpp"
#include "perc/rng.hpp"
#include "perc/union_find.hpp"

namespace perc {

// Knobs for one Monte Carlo run. Identical configs produce identical
// results, for any worker count.
struct McConfig {
    uint64_t seed = 1;
    uint64_t samples = 100000;
    int box_radius = 8;
    double p = 0.5;
    double z = kZ95;
    int workers = 0; // 0 = use the hardware
    size_t vertex_budget = kDefaultVertexBudget;
};

inline int resolve_workers(int requested, uint64_t samples) {
    int w = requested > 0
                ? requested
                : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    if (w > 16) w = 16;
    if (static_cast<uint64_t>(w) > samples) w = static_cast<int>(samples);
    return std::max(w, 1);
}

namespace detail {

// Splits the sample range into one contiguous chunk per worker and sums the
// per-worker counters. Because each sample's draws are keyed by its own
// index, the partitioning cannot change the totals.
template <class Fn>
std::vector<uint64_t> parallel_counts(uint64_t samples, int workers, size_t slots, Fn&& fn) {
    if (samples == 0) throw invalid_parameter("monte carlo: samples must be >= 1");
    workers = resolve_workers(workers, samples);
    std::vector<std::vector<uint64_t>> partial(static_cast<size_t>(workers),
                                               std::vector<uint64_t>(slots, 0));
    if (workers == 1) {
        fn(uint64_t{0}, samples, partial[0]);
    } else {
        std::vector<std::thread> pool;
        const uint64_t chunk = samples / static_cast<uint64_t>(workers);
        for (int w = 0; w < workers; ++w) {
            const uint64_t begin = chunk * static_cast<uint64_t>(w);
            const uint64_t end = w + 1 == workers ? samples : begin + chunk;
            pool.emplace_back([&, begin, end, w] { fn(begin, end, partial[static_cast<size_t>(w)]); });
        }
        for (auto& t : pool) t.join();
    }
    std::vector<uint64_t> total(slots, 0);
    for (const auto& part : partial)
        for (size_t s = 0; s < slots; ++s) total[s] += part[s];
    return total;
}

} // namespace detail

// One Bernoulli(p) bond configuration for sample index i: every active edge
// is opened independently iff its keyed uniform falls below p. Reuses the
// caller's disjoint-set buffer.
inline bool connection_sample(const Graph& g, std::span<const EdgeId> active, VertexId u,
                              VertexId v, uint64_t seed, uint64_t sample, double p,
                              DisjointSets& ds) {
    ds.reset(g.vertex_count);
    for (EdgeId e : active) {
        RandomStream stream(seed, sample, g.edge_keys[static_cast<size_t>(e)]);
        if (stream.next_unit() < p) ds.unite(g.edges[static_cast<size_t>(e)].a,
                                              g.edges[static_cast<size_t>(e)].b);
    }
    return ds.connected(u, v);
}

// Monte Carlo estimate of P_p(u <-> v) on g with forced_closed edges
// deleted.
inline Estimate estimate_connection(const Graph& g, VertexId u, VertexId v,
                                    std::span<const EdgeId> forced_closed, const McConfig& cfg) {
    if (!g.has_vertex(u) || !g.has_vertex(v))
        throw invalid_parameter("estimate_connection: terminal off graph");
    const std::vector<EdgeId> active = edges_without(g, forced_closed);
    const auto counts = detail::parallel_counts(
        cfg.samples, cfg.workers, 1,
        [&](uint64_t begin, uint64_t end, std::vector<uint64_t>& acc) {
            DisjointSets ds(g.vertex_count);
            for (uint64_t i = begin; i < end; ++i)
                acc[0] += connection_sample(g, active, u, v, cfg.seed, i, cfg.p, ds);
        });
    return make_estimate(counts[0], cfg.samples, cfg.z);
}

// F(p) = P_p(o <-> e1 | {o,e1} closed) on the L1 box of Z^d, realized by
// deleting the edge.
inline Estimate estimate_F(int d, const McConfig& cfg) {
    if (d < 2) throw invalid_parameter("estimate_F: d must be >= 2");
    const BoxGraph box = make_box(d, cfg.box_radius, /*remove_origin_edge=*/true,
                                  cfg.vertex_budget);
    return estimate_connection(box.graph, box.origin, box.e1, {}, cfg);
}

struct TauStep {
    double p = 0.0;
    Estimate estimate;
    int verdict = 0; // -1: F(p) < p, +1: F(p) > p, 0: ambiguous
};

struct TauResult {
    double lo = 0.0;
    double hi = 1.0;
    bool ambiguous = false;
    std::vector<TauStep> trace;
};

namespace detail {

inline int f_verdict(const Estimate& est, double p) {
    if (est.hi() < p) return -1;
    if (est.lo() > p) return +1;
    return 0;
}

} // namespace detail

// Bisection for the crossing of F(p) = p. Every step draws a fresh sample
// batch (seed derived from the step index). Refinement stops early when a
// step is statistically ambiguous; the returned bracket always contains the
// empirical crossing.
inline TauResult bisect_tau_c(int d, const McConfig& tmpl, double p_lo, double p_hi,
                              int iterations) {
    if (!(0.0 <= p_lo && p_lo < p_hi && p_hi <= 1.0))
        throw invalid_parameter("bisect_tau_c: bad bracket");
    TauResult result;
    result.lo = p_lo;
    result.hi = p_hi;

    auto run = [&](double p, int step) {
        McConfig cfg = tmpl;
        cfg.p = p;
        cfg.seed = hash_combine(tmpl.seed, 0xb15ec7u + static_cast<uint64_t>(step));
        TauStep s;
        s.p = p;
        s.estimate = estimate_F(d, cfg);
        s.verdict = detail::f_verdict(s.estimate, p);
        result.trace.push_back(s);
        return s;
    };

    const TauStep at_lo = run(p_lo, 0);
    const TauStep at_hi = run(p_hi, 1);
    if (at_lo.verdict != -1 || at_hi.verdict != +1) {
        auto describe = [](const TauStep& s) {
            return "p=" + std::to_string(s.p) + " CI [" + std::to_string(s.estimate.lo()) + ", " +
                   std::to_string(s.estimate.hi()) + "]";
        };
        throw invalid_bracket("bisect_tau_c: endpoints not significant: " + describe(at_lo) +
                              "; " + describe(at_hi));
    }

    for (int step = 0; step < iterations; ++step) {
        const double mid = 0.5 * (result.lo + result.hi);
        const TauStep s = run(mid, 2 + step);
        if (s.verdict == 0) {
            result.ambiguous = true;
            break;
        }
        if (s.verdict < 0)
            result.lo = mid;
        else
            result.hi = mid;
    }
    return result;
}

// Triangle quantities on the triangular patch with the three edges of an
// origin-incident triangle {x,y,z} deleted:
//   A = P( {x<->y} or {x<->z} ),  B = P( x<->y ).
// Both proportions come from the same sample stream.
inline std::pair<Estimate, Estimate> estimate_triangle_AB(double p, const McConfig& cfg) {
    if (cfg.box_radius < 2)
        throw invalid_parameter("estimate_triangle_AB: patch radius must be >= 2");
    const TriangularPatch patch = make_triangular_patch(cfg.box_radius, cfg.vertex_budget);
    const auto [x, y, z] = patch.triangle;
    std::vector<EdgeId> forced;
    for (auto [a, b] : {std::pair{x, y}, std::pair{y, z}, std::pair{z, x}})
        forced.push_back(*patch.graph.find_edge(a, b));
    const std::vector<EdgeId> active = edges_without(patch.graph, forced);

    const Graph& g = patch.graph;
    const auto counts = detail::parallel_counts(
        cfg.samples, cfg.workers, 2,
        [&, x = x, y = y, z = z](uint64_t begin, uint64_t end, std::vector<uint64_t>& acc) {
            DisjointSets ds(g.vertex_count);
            for (uint64_t i = begin; i < end; ++i) {
                ds.reset(g.vertex_count);
                for (EdgeId e : active) {
                    RandomStream stream(cfg.seed, i, g.edge_keys[static_cast<size_t>(e)]);
                    if (stream.next_unit() < p)
                        ds.unite(g.edges[static_cast<size_t>(e)].a,
                                 g.edges[static_cast<size_t>(e)].b);
                }
                const bool xy = ds.connected(x, y);
                const bool xz = ds.connected(x, z);
                acc[0] += xy || xz;
                acc[1] += xy;
            }
        });
    return {make_estimate(counts[0], cfg.samples, cfg.z),
            make_estimate(counts[1], cfg.samples, cfg.z)};
}

enum class LatticeKind { triangular, hexagonal };

// Direct conditional connection probability o <-> e with the single edge
// {o,e} deleted, on a triangular or hexagonal patch.
inline Estimate estimate_F_lattice(LatticeKind kind, double p, const McConfig& cfg) {
    if (cfg.box_radius < 2)
        throw invalid_parameter("estimate_F_lattice: patch radius must be >= 2");
    McConfig cfg_p = cfg;
    cfg_p.p = p;
    if (kind == LatticeKind::triangular) {
        const TriangularPatch patch = make_triangular_patch(cfg.box_radius, cfg.vertex_budget);
        const EdgeId direct = *patch.graph.find_edge(patch.graph.origin, patch.e_t);
        const std::vector<EdgeId> forced{direct};
        return estimate_connection(patch.graph, patch.graph.origin, patch.e_t, forced, cfg_p);
    }
    const HexagonalPatch patch = make_hexagonal_patch(cfg.box_radius, cfg.vertex_budget);
    const EdgeId direct = *patch.graph.find_edge(patch.graph.origin, patch.e_h);
    const std::vector<EdgeId> forced{direct};
    return estimate_connection(patch.graph, patch.graph.origin, patch.e_h, forced, cfg_p);
}

} // namespace perc
