#include <catch2/catch.hpp>

#include <cmath>

#include "perc/analysis.hpp"
#include "perc/dust.hpp"
#include "perc/mc.hpp"
#include "perc/rng.hpp"

using namespace perc;

TEST_CASE("f_lambda values and symmetry") {
    REQUIRE(f_lambda(1, 1, 1, 1.0, 0.0) == Approx(1.0));
    REQUIRE(f_lambda(1, 0, 0, 2.0, 0.5) == Approx(std::exp(-1.0)));
    for (int i = 0; i <= 10; ++i) {
        const double t = i / 10.0;
        REQUIRE(f_lambda(0.7, 0.7, 0.3, 1.7, t) == Approx(f_lambda(0.7, 0.7, 0.3, 1.7, 1.0 - t)));
    }
    REQUIRE_THROWS_AS(f_lambda(1.2, 0, 0, 1, 0.5), invalid_parameter);
    REQUIRE_THROWS_AS(f_lambda(0.5, 0.5, 0.5, 0.0, 0.5), invalid_parameter);
    REQUIRE_THROWS_AS(f_lambda(0.5, 0.5, 0.5, 1.0, 1.5), invalid_parameter);
}

TEST_CASE("minimizer trichotomy") {
    SECTION("symmetric weights sit at one half") {
        const FMinResult r = minimize_f(1, 1, 1, 2.5);
        REQUIRE(r.case_label == FMinCase::interior);
        REQUIRE(r.t_star == Approx(0.5));
    }
    SECTION("b/a below e^{-lambda} pins the minimum to t=1") {
        const FMinResult r = minimize_f(1, std::exp(-2.0), 0.5, 1.0);
        REQUIRE(r.case_label == FMinCase::min_at_1);
        REQUIRE(r.t_star == 1.0);
    }
    SECTION("b/a above e^{lambda} pins the minimum to t=0") {
        const FMinResult r = minimize_f(std::exp(-2.0), 1, 0.5, 1.0);
        REQUIRE(r.case_label == FMinCase::min_at_0);
        REQUIRE(r.t_star == 0.0);
    }
    SECTION("a = 0 is reported as degenerate, not guessed") {
        REQUIRE(minimize_f(0, 0.5, 0.5, 1.0).case_label == FMinCase::degenerate_min_at_0);
        REQUIRE(minimize_f(0, 0, 0.5, 1.0).case_label == FMinCase::degenerate_constant);
    }
    SECTION("interior example agrees with a dense grid to 1e-8") {
        const FMinResult r = minimize_f(1, 1, 1, 3.0);
        double best = 1e300;
        for (int i = 0; i <= 10000; ++i) best = std::min(best, f_lambda(1, 1, 1, 3.0, i / 10000.0));
        REQUIRE(r.t_star == Approx(0.5));
        REQUIRE(std::abs(r.value - best) <= 1e-8);
    }
}

TEST_CASE("minimizer matches grid search on random draws") {
    const int grid_points = 10000;
    const double dt = 1.0 / grid_points;
    int seen[3] = {0, 0, 0};
    for (int draw = 0; draw < 200; ++draw) {
        RandomStream rs(606, static_cast<uint64_t>(draw), 0);
        const double a = 0.005 + 0.995 * rs.next_unit();
        const double b = rs.next_unit();
        const double c = rs.next_unit();
        const double lambda = 0.05 + 4.95 * rs.next_unit();
        const FMinResult r = minimize_f(a, b, c, lambda);

        double best = 1e300;
        int best_i = 0;
        for (int i = 0; i <= grid_points; ++i) {
            const double v = f_lambda(a, b, c, lambda, i * dt);
            if (v < best) best = v, best_i = i;
        }
        REQUIRE(r.value <= best + 1e-12);
        REQUIRE(best - r.value <= 1e-6);
        const double grid_t = best_i * dt;
        switch (r.case_label) {
            case FMinCase::min_at_0: REQUIRE(grid_t <= dt); break;
            case FMinCase::min_at_1: REQUIRE(grid_t >= 1.0 - dt); break;
            case FMinCase::interior: REQUIRE(std::abs(grid_t - r.t_star) <= dt); break;
            default: FAIL("degenerate case cannot occur with a > 0");
        }
        seen[static_cast<int>(r.case_label)]++;
    }
    REQUIRE(seen[0] > 0);
    REQUIRE(seen[1] > 0);
    REQUIRE(seen[2] > 0);
}

TEST_CASE("closed-form bounds") {
    SECTION("both bounds tend to 1 as lambda vanishes") {
        REQUIRE(bound_mid(1e-12, 0.5) == Approx(1.0).margin(1e-9));
        REQUIRE(bound_vertex(1e-12, 2) == Approx(1.0).margin(1e-9));
    }
    SECTION("at lambda = 0.02 the vertex bound beats the midpoint bound") {
        REQUIRE(bound_vertex(0.02, 2) - bound_mid(0.02, 0.5) > 0.0);
    }
    SECTION("bound_mid is f_lambda with unit weights") {
        for (int i = 1; i < 10; ++i) {
            const double t = i / 10.0;
            REQUIRE(bound_mid(0.8, t) == Approx(f_lambda(1, 1, 1, 0.8, t)));
        }
    }
    SECTION("parameter guards") {
        REQUIRE_THROWS_AS(bound_mid(0.0, 0.5), invalid_parameter);
        REQUIRE_THROWS_AS(bound_mid(1.0, 0.0), invalid_parameter);
        REQUIRE_THROWS_AS(bound_vertex(1.0, 1), invalid_parameter);
    }
}

TEST_CASE("the polynomial g") {
    const IntPoly g = g_poly();
    REQUIRE(g == IntPoly({-2, -2, -2, -2, -2, 0, 2, 2, 2, 2, 2, 1}));
    REQUIRE(g.eval_int(1) == 1);
    REQUIRE(g.sign_at(mpq_class(99, 100)) > 0);
    REQUIRE(g_identity_residual().is_zero());

    SECTION("exactly one sign change on (0.9, 1)") {
        int flips = 0;
        int prev = g.sign_at(mpq_class(9, 10));
        REQUIRE(prev < 0);
        for (int i = 1; i <= 50; ++i) {
            const int s = g.sign_at(mpq_class(900 + 2 * i, 1000));
            if (s != 0 && s != prev) {
                ++flips;
                prev = s;
            }
        }
        REQUIRE(flips == 1);
    }
    SECTION("z0 bracket and frozen value") {
        const RootBracket b = z0_bracket(1e-12);
        REQUIRE(b.hi - b.lo <= rat_from_double(1e-12));
        REQUIRE(g_poly().sign_at(b.lo) < 0);
        REQUIRE(g_poly().sign_at(b.hi) > 0);
        REQUIRE(z0_threshold(1e-12) == Approx(0.984910307765).margin(1e-9));
        // consistent with using z0 = 0.99 (i.e. lambda < 0.02)
        REQUIRE(z0_threshold() < 0.99);
        REQUIRE(z0_threshold() < std::exp(-0.01));
    }
}

TEST_CASE("thresholds and conversions") {
    REQUIRE(theta_threshold(4) == Approx(std::sqrt(0.5)));
    for (int n = 5; n <= 40; ++n) REQUIRE(theta_threshold(n) < theta_threshold(n - 1));
    REQUIRE(theta_threshold(40) < 0.15);
    REQUIRE_THROWS_AS(theta_threshold(3), invalid_parameter);

    REQUIRE(p0(2) == Approx(1.0 / std::sqrt(12.0)));
    REQUIRE(p0_conservative(2) == Approx(1.0 / 6.0));
    REQUIRE(p0_conservative(2) < p0(2));
    REQUIRE(p0_conservative(3) < p0(3));
    REQUIRE_THROWS_AS(p0(1), invalid_parameter);

    REQUIRE(p_of_lambda(lambda_of_p(0.37)) == Approx(0.37).epsilon(1e-15));
    REQUIRE(lambda_of_p(1.0) == 0.0);
    REQUIRE(p_of_lambda(0.0) == 1.0);
    REQUIRE_THROWS_AS(lambda_of_p(0.0), invalid_parameter);
    REQUIRE_THROWS_AS(lambda_of_p(1.5), invalid_parameter);
    REQUIRE_THROWS_AS(p_of_lambda(-1.0), invalid_parameter);
}

TEST_CASE("every beta has a theta graph below it") {
    for (double beta : {0.9, 0.8, 0.5, 0.3}) {
        int n = 4;
        while (theta_threshold(n) > beta) ++n;
        REQUIRE(theta_threshold(n) <= beta);
        REQUIRE(n < 200);
    }
    // frozen spot values
    int n = 4;
    while (theta_threshold(n) > 0.5) ++n;
    REQUIRE(n == 6);
}

TEST_CASE("the axis decomposition ties the dust curve to the conditional probability") {
    // P(o <-> t e1) = e^{-t lambda} + C (e^{-(1-t) lambda} - e^{-lambda})
    // with C estimated from the Bernoulli side at p = e^{-lambda}.
    const double lambda = 0.7;
    const double p = p_of_lambda(lambda);
    McConfig cfg;
    cfg.seed = 707;
    cfg.samples = 60000;
    cfg.box_radius = 4;
    cfg.p = p;
    const Estimate cond = estimate_F(2, cfg);

    SECTION("t = 1 reduces to the unconditioned vertex probability") {
        REQUIRE(axis_decomposition(lambda, 1.0, cond.mean) ==
                Approx(p + cond.mean * (1.0 - p)).epsilon(1e-12));
        const Estimate direct = estimate_dust_connection(
            2, lambda, PipePoint::at_vertex(make_box(2, cfg.box_radius, false).e1), cfg);
        REQUIRE(std::abs(direct.mean - axis_decomposition(lambda, 1.0, cond.mean)) <=
                4.0 * (direct.ci_half_width + cond.ci_half_width));
    }
    SECTION("t = 1/2 matches the measured midpoint probability") {
        const BoxGraph box = make_box(2, cfg.box_radius, false);
        const Estimate direct = estimate_dust_connection(2, lambda, axis_point(box, 0.5), cfg);
        REQUIRE(std::abs(direct.mean - axis_decomposition(lambda, 0.5, cond.mean)) <=
                4.0 * (direct.ci_half_width + cond.ci_half_width));
    }
}
