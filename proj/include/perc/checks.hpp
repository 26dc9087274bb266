#pragma once

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "perc/analysis.hpp"
#include "perc/dust.hpp"
#include "perc/exact.hpp"
#include "perc/graph.hpp"
#include "perc/lattice.hpp"
#include "perc/mc.hpp"
#include "perc/poly.hpp"

namespace perc {

// The built-in verification suite: every numerically checkable claim the
// toolkit reproduces, each pinned to fixed parameters and tolerances.
// `scale` shrinks sample counts for smoke runs; published results use 1.

struct CheckOptions {
    double scale = 1.0;
    int workers = 0;
    uint64_t seed = 20240001;
};

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace checks_detail {

inline uint64_t scaled(uint64_t base, double scale) {
    const double s = base * scale;
    return s < 1000.0 ? 1000 : static_cast<uint64_t>(s);
}

inline std::string fnum(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Plain binomial standard error; the "4 sigma" slack in the bound checks.
inline double std_error(const Estimate& e) {
    const double n = static_cast<double>(e.samples);
    return std::sqrt(std::max(e.mean * (1.0 - e.mean), 1.0 / n) / n);
}

// The two internally disjoint 3-edge paths from o to e1 in Z^2
// (through (0,1),(1,1) and (0,-1),(1,-1)).
inline Graph two_paths_subgraph() {
    Graph g;
    g.vertex_count = 6; // 0=o, 1=(0,1), 2=(1,1), 3=e1, 4=(0,-1), 5=(1,-1)
    g.origin = 0;
    for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 3}})
        g.edges.push_back(make_edge(a, b));
    assign_index_keys(g);
    validate_graph(g);
    return g;
}

} // namespace checks_detail

inline CheckResult check_theta_closed_forms(const CheckOptions& opt) {
    CheckResult res{1, "theta polynomials: enumeration equals closed forms (n=3..10)", false, "", 0};
    bool ok = true;
    std::ostringstream detail;
    for (int n = 3; n <= 10 && ok; ++n) {
        const Graph theta = make_theta(n);
        const IntPoly peak = two_terminal_poly(theta, 0, n, {}, opt.workers);
        const IntPoly middle = two_terminal_poly(theta, 0, 1, {}, opt.workers);
        if (peak != theta_closed_form(n, ThetaTarget::peak) ||
            middle != theta_closed_form(n, ThetaTarget::middle)) {
            ok = false;
            detail << "mismatch at n=" << n;
        }
    }
    if (ok) detail << "all 16 polynomials identical coefficientwise";
    res.pass = ok;
    res.detail = detail.str();
    return res;
}

inline CheckResult check_golden_ratio_crossing(const CheckOptions&) {
    CheckResult res{2, "golden-ratio crossing of the n=4 theta difference", false, "", 0};
    const IntPoly diff =
        theta_closed_form(4, ThetaTarget::peak) - theta_closed_form(4, ThetaTarget::middle);
    const double root = isolate_root(diff, 0.5, 0.7, 1e-10);
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    bool ok = std::abs(root - golden) <= 1e-10;
    const IntPoly peak = theta_closed_form(4, ThetaTarget::peak);
    const IntPoly middle = theta_closed_form(4, ThetaTarget::middle);
    for (int i = 0; i <= 36; ++i) {
        const double p = 0.63 + 0.01 * i;
        if (!(peak.eval(p) > middle.eval(p))) ok = false;
    }
    res.pass = ok;
    res.detail = "root=" + checks_detail::fnum(root) + " vs (sqrt(5)-1)/2=" +
                 checks_detail::fnum(golden) + "; peak>middle on p=0.63..0.99";
    return res;
}

inline CheckResult check_tree_glued_mc(const CheckOptions& opt) {
    CheckResult res{3, "tree-glued graph: within-copy Monte Carlo matches exact values", false, "",
                    0};
    const TreeGlued tg = make_tree_glued(4, 1);
    McConfig cfg;
    cfg.seed = opt.seed;
    cfg.samples = checks_detail::scaled(100000, opt.scale);
    cfg.workers = opt.workers;
    bool ok = true;
    double worst = 0.0;
    for (double p : {0.5, 0.7}) {
        cfg.p = p;
        for (auto [idx, target] :
             {std::pair{4, ThetaTarget::peak}, std::pair{1, ThetaTarget::middle}}) {
            const Estimate est =
                estimate_connection(tg.graph, tg.center[0], tg.center[static_cast<size_t>(idx)],
                                    {}, cfg);
            const double exact = theta_closed_form(4, target).eval(p);
            const double gap = std::abs(est.mean - exact);
            worst = std::max(worst, gap / (4.0 * est.ci_half_width));
            if (gap > 4.0 * est.ci_half_width) ok = false;
        }
    }
    res.pass = ok;
    res.detail = "worst |mean-exact| = " + checks_detail::fnum(worst) +
                 " of the 4*ci allowance (4 pairs, p=0.5 and 0.7, " +
                 std::to_string(cfg.samples) + " samples)";
    return res;
}

inline CheckResult check_g_facts(const CheckOptions&) {
    CheckResult res{4, "g(z) facts: g(1)=1, g(0.99)>0, exact factorization identity", false, "", 0};
    const IntPoly g = g_poly();
    const bool at_one = g.eval_int(1) == 1;
    const bool at_99 = g.sign_at(mpq_class(99, 100)) > 0;
    const bool identity = g_identity_residual().is_zero();
    res.pass = at_one && at_99 && identity;
    res.detail = std::string("g(1)=1: ") + (at_one ? "yes" : "NO") +
                 "; g(0.99)>0: " + (at_99 ? "yes" : "NO") +
                 "; residual polynomial zero: " + (identity ? "yes" : "NO");
    return res;
}

inline CheckResult check_dust_nonmonotone(const CheckOptions& opt) {
    CheckResult res{5, "pipe-dust non-monotonicity at lambda=0.02 (radii 6 and 12)", false, "", 0};
    McConfig cfg;
    cfg.seed = opt.seed + 5;
    cfg.samples = checks_detail::scaled(1000000, opt.scale);
    cfg.workers = opt.workers;
    bool ok = true;
    std::ostringstream detail;
    for (int r : {6, 12}) {
        cfg.box_radius = r;
        const PairedDiff diff = dust_connection_diff(2, 0.02, 1.0, 0.5, cfg, kZ99);
        if (!(diff.lo() > 0.0)) ok = false;
        detail << "r=" << r << ": diff=" << checks_detail::fnum(diff.mean()) << " +- "
               << checks_detail::fnum(diff.ci_half_width()) << " (99%); ";
    }
    res.pass = ok;
    res.detail = detail.str();
    return res;
}

inline CheckResult check_dust_bounds(const CheckOptions& opt) {
    CheckResult res{6, "closed-form bounds envelop the lambda=0.02 estimates", false, "", 0};
    McConfig cfg;
    cfg.seed = opt.seed + 6;
    cfg.samples = checks_detail::scaled(1000000, opt.scale);
    cfg.workers = opt.workers;
    const double lambda = 0.02;
    bool ok = true;
    std::ostringstream detail;
    for (int r : {6, 12}) {
        cfg.box_radius = r;
        const double grid[] = {0.5, 1.0};
        const auto curve = scan_t(2, lambda, grid, cfg);
        const Estimate& mid = curve[0].second;
        const Estimate& vertex = curve[1].second;
        const double upper = bound_mid(lambda, 0.5) + 4.0 * checks_detail::std_error(mid);
        const double lower = bound_vertex(lambda, 2) - 4.0 * checks_detail::std_error(vertex);
        if (!(mid.mean <= upper)) ok = false;
        if (!(vertex.mean >= lower)) ok = false;
        detail << "r=" << r << ": mid " << checks_detail::fnum(mid.mean) << " <= "
               << checks_detail::fnum(upper) << ", vertex " << checks_detail::fnum(vertex.mean)
               << " >= " << checks_detail::fnum(lower) << "; ";
    }
    res.pass = ok;
    res.detail = detail.str();
    return res;
}

inline CheckResult check_f_bounds(const CheckOptions& opt) {
    CheckResult res{7, "F(p): below p at p=0.2; exact certificate above p at p=0.99", false, "", 0};
    McConfig cfg;
    cfg.seed = opt.seed + 7;
    cfg.samples = checks_detail::scaled(1000000, opt.scale);
    cfg.box_radius = 6;
    cfg.p = 0.2;
    cfg.workers = opt.workers;
    const Estimate low = estimate_F(2, cfg);
    const bool low_ok = low.hi() < 0.2;

    const Graph sub = checks_detail::two_paths_subgraph();
    const IntPoly poly = two_terminal_poly(sub, 0, 3);
    const IntPoly expected{0, 0, 0, 2, 0, 0, -1}; // 1-(1-p^3)^2
    const mpq_class p99(99, 100);
    const bool form_ok = poly == expected;
    const bool cert_ok = poly.eval_rat(p99) > p99;
    res.pass = low_ok && form_ok && cert_ok;
    res.detail = "F(0.2,r=6) CI [" + checks_detail::fnum(low.lo()) + ", " +
                 checks_detail::fnum(low.hi()) + "] < 0.2: " + (low_ok ? "yes" : "NO") +
                 "; subgraph poly = 2p^3-p^6: " + (form_ok ? "yes" : "NO") +
                 "; exact value at 0.99 = " + checks_detail::fnum(poly.eval(0.99)) + " > 0.99: " +
                 (cert_ok ? "yes" : "NO");
    return res;
}

inline CheckResult check_square_crossing(const CheckOptions& opt) {
    CheckResult res{8, "square-lattice crossing: bracket around 0.5; F(0.5) at r=64", false, "", 0};
    McConfig cfg;
    cfg.seed = opt.seed + 8;
    cfg.samples = checks_detail::scaled(100000, opt.scale);
    cfg.box_radius = 32;
    cfg.workers = opt.workers;
    std::ostringstream detail;
    bool ok = true;
    try {
        const TauResult tau = bisect_tau_c(2, cfg, 0.3, 0.9, 5);
        const bool contains = tau.lo <= 0.5 && 0.5 <= tau.hi;
        const bool narrow = tau.hi - tau.lo <= 0.06;
        if (!contains || !narrow) ok = false;
        detail << "bracket [" << checks_detail::fnum(tau.lo) << ", " << checks_detail::fnum(tau.hi)
               << "]" << (tau.ambiguous ? " (ambiguous stop)" : "") << "; ";
    } catch (const invalid_bracket& e) {
        ok = false;
        detail << "bisection failed: " << e.what() << "; ";
    }
    McConfig half = cfg;
    half.p = 0.5;
    half.box_radius = 64;
    const Estimate at_half = estimate_F(2, half);
    const bool in_band = at_half.mean >= 0.45 && at_half.mean <= 0.50;
    if (!in_band) ok = false;
    detail << "F(0.5, r=64) = " << checks_detail::fnum(at_half.mean) << " in [0.45, 0.50]: "
           << (in_band ? "yes" : "NO");
    res.pass = ok;
    res.detail = detail.str();
    return res;
}

inline CheckResult check_triangular_hexagonal(const CheckOptions& opt) {
    CheckResult res{9, "triangular/hexagonal patches at the critical point; A+B near 1", false, "",
                    0};
    const double p = 2.0 * std::sin(M_PI / 18.0);
    McConfig cfg;
    cfg.seed = opt.seed + 9;
    cfg.samples = checks_detail::scaled(100000, opt.scale);
    cfg.box_radius = 32;
    cfg.p = p;
    cfg.workers = opt.workers;

    const auto [a, b] = estimate_triangle_AB(p, cfg);
    const double sum = a.mean + b.mean;
    const bool sum_ok = sum >= 0.95 && sum <= 1.05;

    const Estimate f_tri = estimate_F_lattice(LatticeKind::triangular, p, cfg);
    const bool tri_ok = f_tri.lo() > p;
    const Estimate f_hex = estimate_F_lattice(LatticeKind::hexagonal, 1.0 - p, cfg);
    const bool hex_ok = f_hex.hi() < 1.0 - p;

    res.pass = sum_ok && tri_ok && hex_ok;
    res.detail = "A+B = " + checks_detail::fnum(sum) + " in [0.95,1.05]: " +
                 (sum_ok ? "yes" : "NO") + "; F_tri = " + checks_detail::fnum(f_tri.mean) +
                 " > p = " + checks_detail::fnum(p) + ": " + (tri_ok ? "yes" : "NO") +
                 "; F_hex = " + checks_detail::fnum(f_hex.mean) + " < 1-p = " +
                 checks_detail::fnum(1.0 - p) + ": " + (hex_ok ? "yes" : "NO");
    return res;
}

inline CheckResult check_log_ratio_monotone(const CheckOptions&) {
    CheckResult res{10, "log-ratio h(p) non-increasing on exact polynomials", false, "", 0};
    std::vector<std::pair<std::string, IntPoly>> polys;

    Graph single;
    single.vertex_count = 2;
    single.edges.push_back(make_edge(0, 1));
    assign_index_keys(single);
    polys.emplace_back("single edge", two_terminal_poly(single, 0, 1));

    Graph path2;
    path2.vertex_count = 3;
    path2.edges.push_back(make_edge(0, 1));
    path2.edges.push_back(make_edge(1, 2));
    assign_index_keys(path2);
    polys.emplace_back("two-edge path", two_terminal_poly(path2, 0, 2));

    // At r=1 the removal isolates e1, so the polynomial is zero and h is
    // identically +infinity; the r=2 box carries the informative case.
    for (int r : {1, 2}) {
        const BoxGraph box = make_box(2, r, /*remove_origin_edge=*/true);
        polys.emplace_back("box r=" + std::to_string(r),
                           two_terminal_poly(box.graph, box.origin, box.e1));
    }

    bool ok = true;
    std::ostringstream detail;
    for (const auto& [label, poly] : polys) {
        double prev = std::numeric_limits<double>::infinity();
        bool first = true;
        for (int i = 1; i <= 19; ++i) {
            const double p = 0.05 * i;
            const double h = log_ratio_h(poly, p);
            if (!first && !(h <= prev + 1e-12)) {
                ok = false;
                detail << label << " increases at p=" << checks_detail::fnum(p) << "; ";
            }
            prev = h;
            first = false;
        }
    }
    if (ok) detail << "non-increasing on p=0.05..0.95 for all 4 graphs (tolerance 1e-12)";
    res.pass = ok;
    res.detail = detail.str();
    return res;
}

inline CheckResult check_fmin_grid(const CheckOptions& opt) {
    CheckResult res{11, "f_lambda minimizer trichotomy matches dense grid search", false, "", 0};
    const int grid_points = 10000;
    const double dt = 1.0 / grid_points;
    int count_cases[3] = {0, 0, 0};
    bool ok = true;
    std::ostringstream detail;
    for (int draw = 0; draw < 1000; ++draw) {
        RandomStream rs(opt.seed + 11, static_cast<uint64_t>(draw), 0xF317ull);
        const double a = 0.005 + 0.995 * rs.next_unit();
        const double b = rs.next_unit();
        const double c = rs.next_unit();
        const double lambda = 0.05 + 4.95 * rs.next_unit();
        const FMinResult r = minimize_f(a, b, c, lambda);

        double best = std::numeric_limits<double>::infinity();
        int best_i = 0;
        for (int i = 0; i <= grid_points; ++i) {
            const double v = f_lambda(a, b, c, lambda, i * dt);
            if (v < best) {
                best = v;
                best_i = i;
            }
        }
        if (!(r.value <= best + 1e-12) || !(best - r.value <= 1e-6)) {
            ok = false;
            detail << "value gap at draw " << draw << "; ";
        }
        const double grid_t = best_i * dt;
        bool label_ok = true;
        switch (r.case_label) {
            case FMinCase::min_at_0: label_ok = grid_t <= dt; break;
            case FMinCase::min_at_1: label_ok = grid_t >= 1.0 - dt; break;
            case FMinCase::interior: label_ok = std::abs(grid_t - r.t_star) <= dt; break;
            default: label_ok = false;
        }
        if (!label_ok) {
            ok = false;
            detail << "label mismatch at draw " << draw << "; ";
        }
        count_cases[static_cast<int>(r.case_label)]++;
    }
    if (count_cases[0] == 0 || count_cases[1] == 0 || count_cases[2] == 0) {
        ok = false;
        detail << "not all trichotomy cases drawn; ";
    }
    if (ok)
        detail << "1000 draws agree; cases: min_at_0=" << count_cases[0]
               << " min_at_1=" << count_cases[1] << " interior=" << count_cases[2];
    res.pass = ok;
    res.detail = detail.str();
    return res;
}

inline CheckResult check_dust_bond_equivalence(const CheckOptions& opt) {
    CheckResult res{12, "dust model reduces to bond percolation at lambda = -ln p", false, "", 0};
    const Graph theta = make_theta(4);
    McConfig cfg;
    cfg.seed = opt.seed + 12;
    cfg.samples = checks_detail::scaled(100000, opt.scale);
    cfg.workers = opt.workers;
    bool ok = true;
    double worst = 0.0;
    for (double p : {0.3, 0.6, 0.9}) {
        const double lambda = lambda_of_p(p);
        for (auto [idx, target] :
             {std::pair{4, ThetaTarget::peak}, std::pair{1, ThetaTarget::middle}}) {
            const Estimate est = estimate_dust_connection_on(
                theta, lambda, 0, PipePoint::at_vertex(idx), cfg);
            const double exact = theta_closed_form(4, target).eval(p);
            const double gap = std::abs(est.mean - exact);
            worst = std::max(worst, gap / (4.0 * est.ci_half_width));
            if (gap > 4.0 * est.ci_half_width) ok = false;
        }
    }
    res.pass = ok;
    res.detail = "worst |mean-exact| = " + checks_detail::fnum(worst) +
                 " of the 4*ci allowance (p=0.3,0.6,0.9; both targets)";
    return res;
}

inline CheckResult run_check(int id, const CheckOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult res;
    switch (id) {
        case 1: res = check_theta_closed_forms(opt); break;
        case 2: res = check_golden_ratio_crossing(opt); break;
        case 3: res = check_tree_glued_mc(opt); break;
        case 4: res = check_g_facts(opt); break;
        case 5: res = check_dust_nonmonotone(opt); break;
        case 6: res = check_dust_bounds(opt); break;
        case 7: res = check_f_bounds(opt); break;
        case 8: res = check_square_crossing(opt); break;
        case 9: res = check_triangular_hexagonal(opt); break;
        case 10: res = check_log_ratio_monotone(opt); break;
        case 11: res = check_fmin_grid(opt); break;
        case 12: res = check_dust_bond_equivalence(opt); break;
        default: throw invalid_parameter("unknown check id");
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // The two exact-identity checks carry an explicit runtime ceiling.
    if ((res.id == 1 || res.id == 2 || res.id == 4) && res.seconds >= 1.0) {
        res.pass = false;
        res.detail += " [exceeded the 1 s runtime ceiling]";
    }
    return res;
}

inline std::vector<CheckResult> run_all_checks(const CheckOptions& opt) {
    std::vector<CheckResult> out;
    for (int id = 1; id <= 12; ++id) out.push_back(run_check(id, opt));
    return out;
}

} // namespace perc
