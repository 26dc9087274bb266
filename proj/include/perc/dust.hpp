#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "perc/estimate.hpp"
#include "perc/graph.hpp"
#include "perc/lattice.hpp"
#include "perc/mc.hpp"
#include "perc/rng.hpp"
#include "perc/union_find.hpp"

namespace perc {

// Dust draws use edge streams salted away from the Bernoulli bond draws,
// so the two models give independent estimates that can cross-check each
// other.
inline constexpr uint64_t kDustStreamSalt = 0xD057D057D057D057ull;

// A location in the pipe network: a vertex, or an interior point of an
// edge at parameter t in (0,1) measured from the edge's canonical first
// endpoint (the smaller vertex id).
struct PipePoint {
    bool is_vertex = true;
    VertexId vertex = -1;
    EdgeId edge = -1;
    double t = 0.0;

    static PipePoint at_vertex(VertexId v) {
        PipePoint p;
        p.is_vertex = true;
        p.vertex = v;
        return p;
    }
    static PipePoint interior(EdgeId e, double t) {
        if (!(t > 0.0 && t < 1.0))
            throw invalid_parameter("PipePoint: interior t must lie in (0,1)");
        PipePoint p;
        p.is_vertex = false;
        p.edge = e;
        p.t = t;
        return p;
    }
};

// One sampled dust configuration: per edge, the strictly increasing dust
// positions in (0,1), under the same canonical orientation as PipePoint.
struct DustConfig {
    std::vector<std::vector<double>> dust; // indexed by edge id

    bool edge_free(EdgeId e) const { return dust[static_cast<size_t>(e)].empty(); }
};

inline DustConfig make_dust_config(const Graph& g, std::vector<std::vector<double>> positions) {
    if (positions.size() != g.edges.size())
        throw invalid_parameter("dust config: one list per edge required");
    for (auto& list : positions) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        for (double t : list)
            if (!(t > 0.0 && t < 1.0))
                throw invalid_parameter("dust config: positions must lie in (0,1)");
    }
    return DustConfig{std::move(positions)};
}

// Independent Poisson(lambda) dust on every edge: the count by CDF
// inversion, then uniform order statistics, from the edge's keyed stream.
// An edge is dust-free with probability exp(-lambda).
inline void sample_dust_into(const Graph& g, double lambda, uint64_t seed, uint64_t sample,
                             DustConfig& out) {
    if (lambda < 0.0) throw invalid_parameter("sample_dust: lambda must be >= 0");
    out.dust.resize(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        auto& list = out.dust[e];
        list.clear();
        RandomStream stream(seed, sample, g.edge_keys[e] ^ kDustStreamSalt);
        const unsigned k = stream.poisson(lambda);
        for (unsigned i = 0; i < k; ++i) list.push_back(stream.next_open_unit());
        std::sort(list.begin(), list.end());
    }
}

inline DustConfig sample_dust(const Graph& g, double lambda, uint64_t seed, uint64_t sample) {
    DustConfig cfg;
    sample_dust_into(g, lambda, seed, sample, cfg);
    return cfg;
}

namespace detail {

// Fragment rules for an interior point at t with the edge's dust list:
// the point reaches the t=0 endpoint iff no dust lies at or before t, and
// the t=1 endpoint iff no dust lies at or after t. A point exactly on a
// dust position is blocked on both sides.
inline bool reaches_low_end(const std::vector<double>& dust, double t) {
    return dust.empty() || dust.front() > t;
}
inline bool reaches_high_end(const std::vector<double>& dust, double t) {
    return dust.empty() || dust.back() < t;
}

} // namespace detail

// Connectivity of one dust configuration: dust-free edges merge their
// endpoints; interior points attach to the endpoints their fragment
// reaches; two interior points of the same edge are also adjacent when no
// dust lies between them.
class DustConnectivity {
public:
    DustConnectivity(const Graph& g, const DustConfig& cfg) : g_(g), cfg_(cfg), ds_(g.vertex_count) {
        if (cfg.dust.size() != g.edges.size())
            throw invalid_parameter("dust config does not match graph");
        for (size_t e = 0; e < g.edges.size(); ++e)
            if (cfg.dust[e].empty()) ds_.unite(g.edges[e].a, g.edges[e].b);
    }

    bool connected(const PipePoint& a, const PipePoint& b) {
        check(a);
        check(b);
        if (!a.is_vertex && !b.is_vertex && a.edge == b.edge) {
            const double t1 = std::min(a.t, b.t);
            const double t2 = std::max(a.t, b.t);
            if (t1 == t2) return true; // the same point
            const auto& dust = cfg_.dust[static_cast<size_t>(a.edge)];
            const auto it = std::lower_bound(dust.begin(), dust.end(), t1);
            if (it == dust.end() || *it > t2) return true; // same fragment
        }
        VertexId attach_a[2];
        VertexId attach_b[2];
        const int na = attachments(a, attach_a);
        const int nb = attachments(b, attach_b);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j)
                if (ds_.connected(attach_a[i], attach_b[j])) return true;
        return false;
    }

private:
    void check(const PipePoint& p) const {
        if (p.is_vertex) {
            if (!g_.has_vertex(p.vertex)) throw invalid_parameter("pipe point off graph");
        } else if (p.edge < 0 || static_cast<size_t>(p.edge) >= g_.edges.size()) {
            throw invalid_parameter("pipe point off graph");
        }
    }

    int attachments(const PipePoint& p, VertexId out[2]) {
        if (p.is_vertex) {
            out[0] = p.vertex;
            return 1;
        }
        const auto& dust = cfg_.dust[static_cast<size_t>(p.edge)];
        const Edge& e = g_.edges[static_cast<size_t>(p.edge)];
        int n = 0;
        if (detail::reaches_low_end(dust, p.t)) out[n++] = e.a;
        if (detail::reaches_high_end(dust, p.t)) out[n++] = e.b;
        return n;
    }

    const Graph& g_;
    const DustConfig& cfg_;
    DisjointSets ds_;
};

inline bool dust_connected(const Graph& g, const DustConfig& cfg, const PipePoint& a,
                           const PipePoint& b) {
    DustConnectivity conn(g, cfg);
    return conn.connected(a, b);
}

namespace detail {

// Hot path shared by the dust estimators: one sample's connectivity from a
// source vertex to a target point, drawing only what the query needs (full
// positions just on the target's edge, counts elsewhere).
struct DustSampleScratch {
    DisjointSets ds;
    std::vector<double> target_dust;
};

inline void dust_components_sample(const Graph& g, double lambda, uint64_t seed, uint64_t sample,
                                   EdgeId tracked, DustSampleScratch& scratch) {
    scratch.ds.reset(g.vertex_count);
    scratch.target_dust.clear();
    for (size_t e = 0; e < g.edges.size(); ++e) {
        RandomStream stream(seed, sample, g.edge_keys[e] ^ kDustStreamSalt);
        const unsigned k = stream.poisson(lambda);
        if (k == 0) {
            scratch.ds.unite(g.edges[e].a, g.edges[e].b);
        } else if (tracked == static_cast<EdgeId>(e)) {
            for (unsigned i = 0; i < k; ++i) scratch.target_dust.push_back(stream.next_open_unit());
            std::sort(scratch.target_dust.begin(), scratch.target_dust.end());
        }
    }
}

inline bool dust_target_connected(const Graph& g, const PipePoint& target, VertexId source,
                                  DustSampleScratch& scratch) {
    if (target.is_vertex) return scratch.ds.connected(source, target.vertex);
    const Edge& e = g.edges[static_cast<size_t>(target.edge)];
    const auto& dust = scratch.target_dust;
    return (reaches_low_end(dust, target.t) && scratch.ds.connected(source, e.a)) ||
           (reaches_high_end(dust, target.t) && scratch.ds.connected(source, e.b));
}

inline void check_point_on(const Graph& g, const PipePoint& p, const char* what) {
    if (p.is_vertex) {
        if (!g.has_vertex(p.vertex)) throw invalid_parameter(std::string(what) + ": point off graph");
    } else if (p.edge < 0 || static_cast<size_t>(p.edge) >= g.edges.size()) {
        throw invalid_parameter(std::string(what) + ": point off graph");
    }
}

} // namespace detail

// Monte Carlo estimate of P_lambda(source <-> target) on an arbitrary pipe
// network.
inline Estimate estimate_dust_connection_on(const Graph& g, double lambda, VertexId source,
                                            const PipePoint& target, const McConfig& cfg) {
    if (lambda < 0.0) throw invalid_parameter("dust estimate: lambda must be >= 0");
    if (!g.has_vertex(source)) throw invalid_parameter("dust estimate: source off graph");
    detail::check_point_on(g, target, "dust estimate");
    const EdgeId tracked = target.is_vertex ? -1 : target.edge;
    const auto counts = detail::parallel_counts(
        cfg.samples, cfg.workers, 1,
        [&](uint64_t begin, uint64_t end, std::vector<uint64_t>& acc) {
            detail::DustSampleScratch scratch;
            for (uint64_t i = begin; i < end; ++i) {
                detail::dust_components_sample(g, lambda, cfg.seed, i, tracked, scratch);
                acc[0] += detail::dust_target_connected(g, target, source, scratch);
            }
        });
    return make_estimate(counts[0], cfg.samples, cfg.z);
}

// The point t*e1 on the axis edge {o, e1} of a box (t = 1 is the vertex).
inline PipePoint axis_point(const BoxGraph& box, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw invalid_parameter("axis_point: t must lie in (0,1]");
    if (t == 1.0) return PipePoint::at_vertex(box.e1);
    const auto e = box.graph.find_edge(box.origin, box.e1);
    if (!e) throw invalid_parameter("axis_point: the box has no {o,e1} edge");
    // Canonical orientation puts t=0 at the smaller id, which is the origin.
    return PipePoint::interior(*e, t);
}

// P_lambda(o <-> target) on the full L1 box of Z^d (no edge removed).
inline Estimate estimate_dust_connection(int d, double lambda, const PipePoint& target,
                                         const McConfig& cfg) {
    const BoxGraph box = make_box(d, cfg.box_radius, /*remove_origin_edge=*/false,
                                  cfg.vertex_budget);
    return estimate_dust_connection_on(box.graph, lambda, box.origin, target, cfg);
}

// Connection curve along the axis edge with common random numbers: every
// grid point is evaluated on the same dust configuration per sample, so the
// curve's shape is driven by the fragment rule, not by independent noise.
inline std::vector<std::pair<double, Estimate>> scan_t(int d, double lambda,
                                                       std::span<const double> t_grid,
                                                       const McConfig& cfg) {
    for (double t : t_grid)
        if (!(t > 0.0 && t <= 1.0)) throw invalid_parameter("scan_t: grid values must lie in (0,1]");
    const BoxGraph box = make_box(d, cfg.box_radius, false, cfg.vertex_budget);
    const Graph& g = box.graph;
    std::vector<PipePoint> targets;
    targets.reserve(t_grid.size());
    for (double t : t_grid) targets.push_back(axis_point(box, t));
    const EdgeId tracked = *g.find_edge(box.origin, box.e1);

    const auto counts = detail::parallel_counts(
        cfg.samples, cfg.workers, t_grid.size(),
        [&](uint64_t begin, uint64_t end, std::vector<uint64_t>& acc) {
            detail::DustSampleScratch scratch;
            for (uint64_t i = begin; i < end; ++i) {
                detail::dust_components_sample(g, lambda, cfg.seed, i, tracked, scratch);
                for (size_t j = 0; j < targets.size(); ++j)
                    acc[j] += detail::dust_target_connected(g, targets[j], box.origin, scratch);
            }
        });

    std::vector<std::pair<double, Estimate>> out;
    out.reserve(t_grid.size());
    for (size_t j = 0; j < t_grid.size(); ++j)
        out.emplace_back(t_grid[j], make_estimate(counts[j], cfg.samples, cfg.z));
    return out;
}

// Paired difference P(o <-> t_a e1) - P(o <-> t_b e1) under common random
// numbers, with a CI at the given z.
inline PairedDiff dust_connection_diff(int d, double lambda, double t_a, double t_b,
                                       const McConfig& cfg, double z = kZ99) {
    const BoxGraph box = make_box(d, cfg.box_radius, false, cfg.vertex_budget);
    const Graph& g = box.graph;
    const PipePoint pa = axis_point(box, t_a);
    const PipePoint pb = axis_point(box, t_b);
    const EdgeId tracked = *g.find_edge(box.origin, box.e1);

    const auto counts = detail::parallel_counts(
        cfg.samples, cfg.workers, 2,
        [&](uint64_t begin, uint64_t end, std::vector<uint64_t>& acc) {
            detail::DustSampleScratch scratch;
            for (uint64_t i = begin; i < end; ++i) {
                detail::dust_components_sample(g, lambda, cfg.seed, i, tracked, scratch);
                const bool ca = detail::dust_target_connected(g, pa, box.origin, scratch);
                const bool cb = detail::dust_target_connected(g, pb, box.origin, scratch);
                acc[0] += ca && !cb;
                acc[1] += cb && !ca;
            }
        });

    PairedDiff diff;
    diff.gained = counts[0];
    diff.lost = counts[1];
    diff.samples = cfg.samples;
    diff.z = z;
    return diff;
}

} // namespace perc
