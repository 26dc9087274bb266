#include <catch2/catch.hpp>

#include <cmath>

#include "perc/dust.hpp"
#include "perc/exact.hpp"

using namespace perc;

namespace {

Graph single_edge() {
    Graph g;
    g.vertex_count = 2;
    g.edges.push_back(make_edge(0, 1));
    assign_index_keys(g);
    validate_graph(g);
    return g;
}

} // namespace

TEST_CASE("sampling the dust process") {
    const BoxGraph box = make_box(2, 6, false);
    const Graph& g = box.graph;

    SECTION("lambda = 0 leaves every edge empty") {
        const DustConfig cfg = sample_dust(g, 0.0, 1, 0);
        for (size_t e = 0; e < g.edges.size(); ++e) REQUIRE(cfg.edge_free(static_cast<EdgeId>(e)));
    }
    SECTION("negative lambda is rejected") {
        REQUIRE_THROWS_AS(sample_dust(g, -0.1, 1, 0), invalid_parameter);
    }
    SECTION("dust-free fraction is about exp(-lambda) at lambda = ln 2") {
        const double lambda = std::log(2.0);
        uint64_t empty = 0, total = 0;
        for (uint64_t i = 0; i < 700; ++i) {
            const DustConfig cfg = sample_dust(g, lambda, 3, i);
            for (size_t e = 0; e < g.edges.size(); ++e) {
                empty += cfg.edge_free(static_cast<EdgeId>(e));
                ++total;
            }
        }
        REQUIRE(static_cast<double>(empty) / static_cast<double>(total) ==
                Approx(0.5).margin(0.01));
    }
    SECTION("mean dust count per edge is about lambda at lambda = 2") {
        uint64_t count = 0, total = 0;
        for (uint64_t i = 0; i < 700; ++i) {
            const DustConfig cfg = sample_dust(g, 2.0, 4, i);
            for (const auto& list : cfg.dust) {
                count += list.size();
                ++total;
            }
        }
        REQUIRE(static_cast<double>(count) / static_cast<double>(total) ==
                Approx(2.0).margin(0.03));
    }
    SECTION("positions are strictly increasing and interior") {
        for (uint64_t i = 0; i < 200; ++i) {
            const DustConfig cfg = sample_dust(g, 3.0, 5, i);
            for (const auto& list : cfg.dust)
                for (size_t k = 0; k < list.size(); ++k) {
                    REQUIRE(list[k] > 0.0);
                    REQUIRE(list[k] < 1.0);
                    if (k) REQUIRE(list[k] > list[k - 1]);
                }
        }
    }
}

TEST_CASE("fragment connectivity rules") {
    const Graph g = single_edge();

    SECTION("no dust: a vertex reaches an interior point") {
        const DustConfig cfg = make_dust_config(g, {{}});
        REQUIRE(dust_connected(g, cfg, PipePoint::at_vertex(0), PipePoint::interior(0, 0.5)));
        REQUIRE(dust_connected(g, cfg, PipePoint::at_vertex(0), PipePoint::at_vertex(1)));
    }
    SECTION("one dust point splits the pipe") {
        const DustConfig cfg = make_dust_config(g, {{0.3}});
        REQUIRE_FALSE(
            dust_connected(g, cfg, PipePoint::interior(0, 0.2), PipePoint::interior(0, 0.4)));
        REQUIRE(dust_connected(g, cfg, PipePoint::interior(0, 0.4), PipePoint::at_vertex(1)));
        REQUIRE(dust_connected(g, cfg, PipePoint::interior(0, 0.2), PipePoint::at_vertex(0)));
        REQUIRE_FALSE(dust_connected(g, cfg, PipePoint::at_vertex(0), PipePoint::at_vertex(1)));
    }
    SECTION("a point exactly on dust is blocked both ways but reflexive") {
        const DustConfig cfg = make_dust_config(g, {{0.5}});
        const PipePoint on_dust = PipePoint::interior(0, 0.5);
        REQUIRE(dust_connected(g, cfg, on_dust, on_dust));
        REQUIRE_FALSE(dust_connected(g, cfg, on_dust, PipePoint::at_vertex(0)));
        REQUIRE_FALSE(dust_connected(g, cfg, on_dust, PipePoint::at_vertex(1)));
        REQUIRE_FALSE(dust_connected(g, cfg, on_dust, PipePoint::interior(0, 0.4)));
    }
    SECTION("around the other side of a cycle") {
        const Graph cycle = make_theta(3); // the 4-cycle
        std::vector<std::vector<double>> dust(cycle.edges.size());
        dust[0] = {0.5};
        const DustConfig cfg = make_dust_config(cycle, std::move(dust));
        REQUIRE(dust_connected(cycle, cfg, PipePoint::at_vertex(0), PipePoint::at_vertex(3)));
    }
    SECTION("two interior points on distinct fragments of distinct edges") {
        const Graph cycle = make_theta(3);
        std::vector<std::vector<double>> dust(cycle.edges.size());
        dust[0] = {0.5}; // edge (0,1)
        dust[1] = {0.5}; // edge (1,3)
        const DustConfig cfg = make_dust_config(cycle, std::move(dust));
        // the fragments around vertex 1 stay connected through it
        REQUIRE(dust_connected(cycle, cfg, PipePoint::interior(0, 0.9), PipePoint::interior(1, 0.2)));
        // opposite fragments are separated from each other's far ends
        REQUIRE_FALSE(
            dust_connected(cycle, cfg, PipePoint::interior(0, 0.9), PipePoint::interior(1, 0.8)));
    }
    SECTION("points off the graph are rejected") {
        const DustConfig cfg = make_dust_config(g, {{}});
        REQUIRE_THROWS_AS(dust_connected(g, cfg, PipePoint::at_vertex(5), PipePoint::at_vertex(0)),
                          invalid_parameter);
        REQUIRE_THROWS_AS(dust_connected(g, cfg, PipePoint::interior(3, 0.5), PipePoint::at_vertex(0)),
                          invalid_parameter);
        REQUIRE_THROWS_AS(PipePoint::interior(0, 0.0), invalid_parameter);
        REQUIRE_THROWS_AS(PipePoint::interior(0, 1.0), invalid_parameter);
    }
}

TEST_CASE("dust connectivity is an equivalence relation") {
    const Graph theta = make_theta(4);
    RandomStream rs(404, 0, 0);
    for (int round = 0; round < 60; ++round) {
        const DustConfig cfg = sample_dust(theta, 1.2, 404, static_cast<uint64_t>(round));
        DustConnectivity conn(theta, cfg);

        std::vector<PipePoint> points;
        for (VertexId v = 0; v < theta.vertex_count; ++v) points.push_back(PipePoint::at_vertex(v));
        for (int i = 0; i < 6; ++i)
            points.push_back(PipePoint::interior(
                static_cast<EdgeId>(rs.next_u32() % theta.edges.size()), rs.next_open_unit()));

        for (const auto& a : points) REQUIRE(conn.connected(a, a));
        for (const auto& a : points)
            for (const auto& b : points) REQUIRE(conn.connected(a, b) == conn.connected(b, a));
        for (const auto& a : points)
            for (const auto& b : points)
                for (const auto& c : points)
                    if (conn.connected(a, b) && conn.connected(b, c))
                        REQUIRE(conn.connected(a, c));
    }
}

TEST_CASE("removing a dust point only merges components") {
    const Graph theta = make_theta(4);
    RandomStream rs(405, 0, 0);
    for (int round = 0; round < 80; ++round) {
        DustConfig cfg = sample_dust(theta, 1.5, 405, static_cast<uint64_t>(round));
        // pick an edge that actually has dust
        int e = -1;
        for (size_t i = 0; i < cfg.dust.size(); ++i)
            if (!cfg.dust[i].empty()) e = static_cast<int>(i);
        if (e < 0) continue;

        std::vector<PipePoint> points;
        for (VertexId v = 0; v < theta.vertex_count; ++v) points.push_back(PipePoint::at_vertex(v));
        for (size_t i = 0; i < theta.edges.size(); ++i)
            points.push_back(PipePoint::interior(static_cast<EdgeId>(i), rs.next_open_unit()));

        DustConfig fewer = cfg;
        auto& list = fewer.dust[static_cast<size_t>(e)];
        list.erase(list.begin() + static_cast<long>(rs.next_u32() % list.size()));

        DustConnectivity before(theta, cfg);
        DustConnectivity after(theta, fewer);
        for (const auto& a : points)
            for (const auto& b : points)
                if (before.connected(a, b)) REQUIRE(after.connected(a, b));
    }
}

TEST_CASE("with lambda = -ln p the vertex law is Bernoulli bond percolation") {
    const Graph theta = make_theta(4);
    McConfig cfg;
    cfg.seed = 406;
    cfg.samples = 60000;
    const double p = 0.6;
    const double lambda = -std::log(p);

    const Estimate dust_est =
        estimate_dust_connection_on(theta, lambda, 0, PipePoint::at_vertex(4), cfg);
    const double exact = theta_closed_form(4, ThetaTarget::peak).eval(p);
    REQUIRE(std::abs(dust_est.mean - exact) <= 4.0 * dust_est.ci_half_width);

    // and it agrees with the bond sampler within combined allowances
    McConfig bond_cfg = cfg;
    bond_cfg.p = p;
    const Estimate bond_est = estimate_connection(theta, 0, 4, {}, bond_cfg);
    REQUIRE(std::abs(dust_est.mean - bond_est.mean) <=
            4.0 * (dust_est.ci_half_width + bond_est.ci_half_width));
}

TEST_CASE("high-rate dust estimates match the single-edge fragment law") {
    // Reaching t*e1 from o at high lambda is dominated by the direct
    // fragment: P = e^{-lambda t} + (multi-edge terms that are ~e^{-3 lambda}).
    McConfig cfg;
    cfg.seed = 407;
    cfg.samples = 100000;
    cfg.box_radius = 2;
    const BoxGraph box = make_box(2, cfg.box_radius, false);

    SECTION("lambda = 6, t = 0.5") {
        const Estimate est = estimate_dust_connection(2, 6.0, axis_point(box, 0.5), cfg);
        REQUIRE(std::abs(est.mean - std::exp(-3.0)) <= 4.0 * est.ci_half_width);
    }
    SECTION("lambda = 20, t = 0.5") {
        const Estimate est = estimate_dust_connection(2, 20.0, axis_point(box, 0.5), cfg);
        REQUIRE(std::abs(est.mean - std::exp(-10.0)) <= 4.0 * est.ci_half_width);
        REQUIRE(est.successes <= 30);
    }
    SECTION("lambda = 6: the curve decreases along t, through t = 1") {
        McConfig scan_cfg = cfg;
        const double grid[] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
        const auto curve = scan_t(2, 6.0, grid, scan_cfg);
        for (size_t i = 1; i < curve.size(); ++i)
            REQUIRE(curve[i].second.successes < curve[i - 1].second.successes);
        // in particular the vertex is easier to miss than the midpoint
        REQUIRE(curve[5].second.mean < curve[2].second.mean);
    }
}

TEST_CASE("scan over t with common random numbers") {
    McConfig cfg;
    cfg.seed = 408;
    cfg.samples = 50000;
    cfg.box_radius = 2;

    SECTION("lambda = 0 connects everything") {
        const double grid[] = {0.25, 0.5, 1.0};
        const auto curve = scan_t(2, 0.0, grid, cfg);
        for (const auto& [t, est] : curve) REQUIRE(est.successes == cfg.samples);
    }
    SECTION("grid values must lie in (0,1]") {
        const double bad[] = {0.0, 0.5};
        REQUIRE_THROWS_AS(scan_t(2, 0.5, bad, cfg), invalid_parameter);
    }
    SECTION("the left-fragment event is decreasing in t samplewise") {
        const Graph g = single_edge();
        for (uint64_t i = 0; i < 500; ++i) {
            const DustConfig dc = sample_dust(g, 2.0, 409, i);
            const auto& dust = dc.dust[0];
            for (double t1 : {0.2, 0.5}) {
                const double t2 = t1 + 0.3;
                const bool far_ok = dust.empty() || dust.front() > t2;
                const bool near_ok = dust.empty() || dust.front() > t1;
                REQUIRE((!far_ok || near_ok));
            }
        }
    }
}

TEST_CASE("paired difference smoke run at small lambda") {
    McConfig cfg;
    cfg.seed = 410;
    cfg.samples = 300000;
    cfg.box_radius = 4;
    const PairedDiff diff = dust_connection_diff(2, 0.02, 1.0, 0.5, cfg, kZ95);
    REQUIRE(diff.mean() > 0.0);
    REQUIRE(diff.lo() > 0.0);
}

TEST_CASE("d=1 is the trivial tree case") {
    // On a path there is exactly one route, so P(o <-> e1) = e^{-lambda}.
    McConfig cfg;
    cfg.seed = 411;
    cfg.samples = 50000;
    cfg.box_radius = 3;
    const BoxGraph box = make_box(1, cfg.box_radius, false);
    const Estimate est = estimate_dust_connection(1, 0.5, PipePoint::at_vertex(box.e1), cfg);
    REQUIRE(std::abs(est.mean - std::exp(-0.5)) <= 4.0 * est.ci_half_width);
}

TEST_CASE("axis points") {
    const BoxGraph box = make_box(2, 2, false);
    const PipePoint vertex = axis_point(box, 1.0);
    REQUIRE(vertex.is_vertex);
    REQUIRE(vertex.vertex == box.e1);
    const PipePoint mid = axis_point(box, 0.5);
    REQUIRE_FALSE(mid.is_vertex);
    REQUIRE(mid.edge == *box.graph.find_edge(box.origin, box.e1));
    REQUIRE(mid.t == 0.5);
    REQUIRE_THROWS_AS(axis_point(box, 0.0), invalid_parameter);
    REQUIRE_THROWS_AS(axis_point(box, 1.1), invalid_parameter);
}
