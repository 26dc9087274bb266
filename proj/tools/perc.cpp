// Command-line front end: reproducible percolation experiments with CSV and
// SVG output. Every run echoes its full configuration in a '#' header block
// and is byte-identical for identical flags.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perc/perc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitAmbiguous = 3;
constexpr int kExitBudget = 4;

struct OutputTarget {
    std::string path; // empty = stdout
    std::unique_ptr<std::ofstream> file;

    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file) {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw perc::invalid_parameter("cannot open output file '" + path + "'");
        }
        return *file;
    }
};

void echo_config(std::ostream& out, const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>& kv) {
    perc::csv_comment(out, "command", command);
    for (const auto& [k, v] : kv) perc::csv_comment(out, k, v);
}

std::vector<double> parse_grid(const std::string& text) {
    double from = 0, to = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> from >> c1 >> to >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
        throw perc::invalid_parameter("bad grid '" + text + "', expected from:to:step");
    std::vector<double> grid;
    const int n = static_cast<int>(std::lround((to - from) / step));
    for (int i = 0; i <= n; ++i) {
        double t = from + i * step;
        if (std::abs(t - to) < 1e-9) t = to; // snap the endpoint (t = 1 is a vertex query)
        if (t <= to + 1e-12) grid.push_back(std::min(t, to));
    }
    if (grid.empty()) throw perc::invalid_parameter("empty grid '" + text + "'");
    return grid;
}

std::string fixed10(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10f", v);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    using namespace perc;

    CLI::App app{"percolation toolkit: exact connection polynomials, lattice Monte Carlo, "
                 "and the pipe-dust continuum model"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    uint64_t samples = 100000;
    int workers = 0;
    std::string out_path;
    app.add_option("--seed", seed, "random seed (recorded in every output)")->capture_default_str();
    app.add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
    app.add_option("--workers", workers, "worker threads (0 = hardware)")->capture_default_str();
    app.add_option("--out", out_path, "output file (default stdout)");

    // ---- exact ----------------------------------------------------------
    auto* exact = app.add_subcommand("exact", "exact theta-graph polynomials and roots");
    exact->require_subcommand(1);
    exact->fallthrough();
    int theta_n = 4;
    std::string theta_target = "peak";
    auto* exact_theta = exact->add_subcommand("theta", "closed-form connection polynomial");
    exact_theta->fallthrough();
    exact_theta->add_option("--n", theta_n, "theta graph parameter")->required();
    exact_theta->add_option("--target", theta_target, "peak or middle")
        ->check(CLI::IsMember({"peak", "middle"}))
        ->capture_default_str();

    auto* exact_diff = exact->add_subcommand("diff", "difference middle - peak");
    exact_diff->fallthrough();
    exact_diff->add_option("--n", theta_n, "theta graph parameter")->required();

    double root_lo = 0.01, root_hi = 0.99, root_tol = 1e-10;
    auto* exact_root = exact->add_subcommand("root", "crossing point of the peak/middle difference");
    exact_root->fallthrough();
    exact_root->add_option("--n", theta_n, "theta graph parameter")->required();
    exact_root->add_option("--lo", root_lo, "bracket low end")->capture_default_str();
    exact_root->add_option("--hi", root_hi, "bracket high end")->capture_default_str();
    exact_root->add_option("--tol", root_tol, "root tolerance")->capture_default_str();

    // ---- tauc -----------------------------------------------------------
    auto* tauc = app.add_subcommand("tauc", "bisection for the crossing of F(p) = p");
    tauc->fallthrough();
    int tauc_d = 2, tauc_radius = 32, tauc_iterations = 5;
    double tauc_plo = 0.3, tauc_phi = 0.9;
    tauc->add_option("--d", tauc_d, "lattice dimension")->capture_default_str();
    tauc->add_option("--radius", tauc_radius, "box radius")->capture_default_str();
    tauc->add_option("--plo", tauc_plo, "bracket low end")->capture_default_str();
    tauc->add_option("--phi", tauc_phi, "bracket high end")->capture_default_str();
    tauc->add_option("--iterations", tauc_iterations, "bisection steps")->capture_default_str();

    // ---- dustpipe -------------------------------------------------------
    auto* dustpipe = app.add_subcommand("dustpipe", "pipe-dust connection curve along the axis edge");
    dustpipe->fallthrough();
    double dust_lambda = 0.02;
    int dust_d = 2, dust_radius = 8;
    std::string dust_grid = "0.1:1.0:0.1";
    std::string dust_format = "csv";
    dustpipe->add_option("--lambda", dust_lambda, "dust rate")->required();
    dustpipe->add_option("--d", dust_d, "lattice dimension")->capture_default_str();
    dustpipe->add_option("--radius", dust_radius, "box radius")->capture_default_str();
    dustpipe->add_option("--grid", dust_grid, "t grid as from:to:step")->capture_default_str();
    dustpipe->add_option("--format", dust_format, "csv, svg, or both")
        ->check(CLI::IsMember({"csv", "svg", "both"}))
        ->capture_default_str();

    // ---- triangle -------------------------------------------------------
    auto* triangle = app.add_subcommand(
        "triangle", "triangular/hexagonal conditional connection probabilities and the A,B system");
    triangle->fallthrough();
    double tri_p = 2.0 * std::sin(M_PI / 18.0);
    int tri_radius = 32;
    triangle->add_option("--p", tri_p, "triangular parameter")->capture_default_str();
    triangle->add_option("--radius", tri_radius, "patch radius")->capture_default_str();

    // ---- counterexample -------------------------------------------------
    auto* counter = app.add_subcommand(
        "counterexample", "smallest theta graph beating the middle vertices on [beta, 1)");
    counter->fallthrough();
    double beta = 0.8;
    int counter_points = 20;
    counter->add_option("--beta", beta, "lower end of the parameter range")->required();
    counter->add_option("--grid-points", counter_points, "verification grid size")
        ->capture_default_str();

    // ---- graph ----------------------------------------------------------
    auto* graphcmd = app.add_subcommand("graph", "emit a constructed graph in the text format");
    graphcmd->fallthrough();
    std::string graph_kind = "theta";
    int graph_n = 4, graph_k = 1, graph_d = 2, graph_radius = 2;
    bool graph_remove = false;
    graphcmd->add_option("--make", graph_kind, "theta, tree-glued, box, triangular, hexagonal")
        ->check(CLI::IsMember({"theta", "tree-glued", "box", "triangular", "hexagonal"}))
        ->capture_default_str();
    graphcmd->add_option("--n", graph_n, "theta parameter")->capture_default_str();
    graphcmd->add_option("--k", graph_k, "tree-glue depth")->capture_default_str();
    graphcmd->add_option("--d", graph_d, "box dimension")->capture_default_str();
    graphcmd->add_option("--radius", graph_radius, "box/patch radius")->capture_default_str();
    graphcmd->add_flag("--remove-origin-edge", graph_remove, "delete the {o,e1} edge of a box");

    // ---- reproduce-paper --------------------------------------------------
    auto* reproduce = app.add_subcommand(
        "reproduce-paper", "run the full verification suite and write a markdown report");
    reproduce->fallthrough();
    double scale = 1.0;
    reproduce->add_option("--scale", scale, "sample-count scale factor (1 = published defaults)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    OutputTarget target;
    target.path = out_path;

    try {
        if (exact_theta->parsed()) {
            auto& out = target.stream();
            const ThetaTarget t =
                theta_target == "peak" ? ThetaTarget::peak : ThetaTarget::middle;
            echo_config(out, "exact theta",
                        {{"n", std::to_string(theta_n)},
                         {"target", theta_target},
                         {"seed", std::to_string(seed)}});
            out << theta_closed_form(theta_n, t).to_string() << '\n';
        } else if (exact_diff->parsed()) {
            auto& out = target.stream();
            echo_config(out, "exact diff",
                        {{"n", std::to_string(theta_n)}, {"seed", std::to_string(seed)}});
            const IntPoly diff = theta_closed_form(theta_n, ThetaTarget::middle) -
                                 theta_closed_form(theta_n, ThetaTarget::peak);
            out << diff.to_string() << '\n';
        } else if (exact_root->parsed()) {
            auto& out = target.stream();
            echo_config(out, "exact root",
                        {{"n", std::to_string(theta_n)},
                         {"lo", fmt_double(root_lo)},
                         {"hi", fmt_double(root_hi)},
                         {"tol", fmt_double(root_tol)},
                         {"seed", std::to_string(seed)}});
            const IntPoly diff = theta_closed_form(theta_n, ThetaTarget::middle) -
                                 theta_closed_form(theta_n, ThetaTarget::peak);
            out << fixed10(isolate_root(diff, root_lo, root_hi, root_tol)) << '\n';
        } else if (tauc->parsed()) {
            auto& out = target.stream();
            echo_config(out, "tauc",
                        {{"d", std::to_string(tauc_d)},
                         {"radius", std::to_string(tauc_radius)},
                         {"samples", std::to_string(samples)},
                         {"seed", std::to_string(seed)},
                         {"plo", fmt_double(tauc_plo)},
                         {"phi", fmt_double(tauc_phi)},
                         {"iterations", std::to_string(tauc_iterations)},
                         {"workers", std::to_string(workers)}});
            McConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.box_radius = tauc_radius;
            cfg.workers = workers;
            TauResult res;
            try {
                res = bisect_tau_c(tauc_d, cfg, tauc_plo, tauc_phi, tauc_iterations);
            } catch (const invalid_bracket& e) {
                out << kMcCsvHeader << '\n';
                std::cerr << "ambiguous bracket: " << e.what() << '\n';
                return kExitAmbiguous;
            }
            out << kMcCsvHeader << '\n';
            for (size_t i = 0; i < res.trace.size(); ++i) {
                const TauStep& s = res.trace[i];
                const std::string tag =
                    i == 0 ? "endpoint_lo" : i == 1 ? "endpoint_hi" : "step" + std::to_string(i - 1);
                out << mc_csv_row(tag, tauc_d, "square", s.p, tauc_radius, seed, s.estimate)
                    << '\n';
            }
            csv_comment(out, "bracket_lo", fmt_double(res.lo));
            csv_comment(out, "bracket_hi", fmt_double(res.hi));
            csv_comment(out, "ambiguous", res.ambiguous ? "true" : "false");
            if (res.ambiguous) {
                std::cerr << "ambiguous bracket: refinement stopped early\n";
                return kExitAmbiguous;
            }
        } else if (dustpipe->parsed()) {
            const std::vector<double> grid = parse_grid(dust_grid);
            McConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.box_radius = dust_radius;
            cfg.workers = workers;
            const auto curve = scan_t(dust_d, dust_lambda, grid, cfg);

            const bool want_csv = dust_format == "csv" || dust_format == "both";
            const bool want_svg = dust_format == "svg" || dust_format == "both";
            if (want_svg && out_path.empty())
                throw invalid_parameter("--format svg/both needs --out");

            const auto header_kv = std::vector<std::pair<std::string, std::string>>{
                {"lambda", fmt_double(dust_lambda)},
                {"d", std::to_string(dust_d)},
                {"radius", std::to_string(dust_radius)},
                {"samples", std::to_string(samples)},
                {"seed", std::to_string(seed)},
                {"grid", dust_grid},
                {"workers", std::to_string(workers)}};

            if (want_csv) {
                OutputTarget csv_target;
                csv_target.path = dust_format == "both" ? out_path + ".csv" : out_path;
                auto& out = csv_target.stream();
                echo_config(out, "dustpipe", header_kv);
                out << kDustCsvHeader << '\n';
                for (const auto& [t, est] : curve)
                    out << dust_csv_row(dust_lambda, t, dust_radius, seed, est) << '\n';
            }
            if (want_svg) {
                std::vector<ChartPoint> points;
                for (const auto& [t, est] : curve)
                    points.push_back({t, est.mean, est.lo(), est.hi()});
                std::ofstream svg(dust_format == "both" ? out_path + ".svg" : out_path);
                if (!svg) throw invalid_parameter("cannot open SVG output");
                write_line_chart(svg,
                                 "P(o <-> t e1), lambda=" + fmt_double(dust_lambda) + ", r=" +
                                     std::to_string(dust_radius),
                                 "t", "connection probability", points);
            }
        } else if (triangle->parsed()) {
            auto& out = target.stream();
            echo_config(out, "triangle",
                        {{"p", fmt_double(tri_p)},
                         {"radius", std::to_string(tri_radius)},
                         {"samples", std::to_string(samples)},
                         {"seed", std::to_string(seed)},
                         {"workers", std::to_string(workers)}});
            McConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.box_radius = tri_radius;
            cfg.workers = workers;
            const auto [a, b] = estimate_triangle_AB(tri_p, cfg);
            const Estimate f_tri = estimate_F_lattice(LatticeKind::triangular, tri_p, cfg);
            const Estimate f_hex = estimate_F_lattice(LatticeKind::hexagonal, 1.0 - tri_p, cfg);
            out << kMcCsvHeader << '\n';
            out << mc_csv_row("A", 2, "triangular", tri_p, tri_radius, seed, a) << '\n';
            out << mc_csv_row("B", 2, "triangular", tri_p, tri_radius, seed, b) << '\n';
            out << mc_csv_row("F_direct", 2, "triangular", tri_p, tri_radius, seed, f_tri) << '\n';
            out << mc_csv_row("F_direct", 2, "hexagonal", 1.0 - tri_p, tri_radius, seed, f_hex)
                << '\n';
            const double assembled = tri_p * tri_p + 2.0 * tri_p * (1.0 - tri_p) * a.mean +
                                     (1.0 - tri_p) * (1.0 - tri_p) * b.mean;
            csv_comment(out, "assembled_F_triangular", fmt_double(assembled));
            csv_comment(out, "A_plus_B", fmt_double(a.mean + b.mean));
        } else if (counter->parsed()) {
            auto& out = target.stream();
            if (!(beta > 0.0 && beta < 1.0))
                throw invalid_parameter("--beta must lie in (0,1)");
            echo_config(out, "counterexample",
                        {{"beta", fmt_double(beta)},
                         {"grid_points", std::to_string(counter_points)},
                         {"seed", std::to_string(seed)}});
            int n = 4;
            while (theta_threshold(n) > beta) ++n;
            csv_comment(out, "n", std::to_string(n));
            csv_comment(out, "theta_threshold", fmt_double(theta_threshold(n)));
            const IntPoly peak = theta_closed_form(n, ThetaTarget::peak);
            const IntPoly middle = theta_closed_form(n, ThetaTarget::middle);
            out << "p,peak,middle,peak_minus_middle\n";
            bool all_positive = true;
            for (int i = 0; i <= counter_points; ++i) {
                const double p = beta + (0.99 - beta) * i / counter_points;
                const double pv = peak.eval(p);
                const double mv = middle.eval(p);
                all_positive = all_positive && pv > mv;
                out << fmt_double(p) << ',' << fmt_double(pv) << ',' << fmt_double(mv) << ','
                    << fmt_double(pv - mv) << '\n';
            }
            csv_comment(out, "peak_exceeds_middle_on_grid", all_positive ? "true" : "false");
        } else if (graphcmd->parsed()) {
            auto& out = target.stream();
            Graph g;
            if (graph_kind == "theta") {
                g = make_theta(graph_n);
            } else if (graph_kind == "tree-glued") {
                g = make_tree_glued(graph_n, graph_k).graph;
            } else if (graph_kind == "box") {
                g = make_box(graph_d, graph_radius, graph_remove).graph;
            } else if (graph_kind == "triangular") {
                g = make_triangular_patch(graph_radius).graph;
            } else {
                g = make_hexagonal_patch(graph_radius).graph;
            }
            write_graph(out, g);
        } else if (reproduce->parsed()) {
            auto& out = target.stream();
            CheckOptions opt;
            opt.scale = scale;
            opt.workers = workers;
            if (app.count("--seed") > 0) opt.seed = seed;
            const auto results = run_all_checks(opt);
            out << "# Verification report\n\n";
            out << "Parameters: scale=" << fmt_double(scale) << ", seed=" << opt.seed
                << ", workers=" << workers << "\n\n";
            if (scale != 1.0)
                out << "Note: sample counts are scaled; pass/fail is only meaningful at "
                       "scale=1.\n\n";
            out << "| # | check | result | time (s) | detail |\n";
            out << "|---|-------|--------|----------|--------|\n";
            bool all_pass = true;
            const auto escape_cell = [](std::string s) {
                for (size_t i = 0; (i = s.find('|', i)) != std::string::npos; i += 2)
                    s.replace(i, 1, "\\|");
                return s;
            };
            for (const auto& r : results) {
                all_pass = all_pass && r.pass;
                out << "| " << r.id << " | " << escape_cell(r.name) << " | "
                    << (r.pass ? "pass" : "FAIL") << " | " << checks_detail::fnum(r.seconds)
                    << " | " << escape_cell(r.detail) << " |\n";
            }
            out << "\nOverall: " << (all_pass ? "all checks passed" : "FAILURES PRESENT") << "\n";
            if (!all_pass) return 1;
        }
    } catch (const budget_exceeded& e) {
        std::cerr << "resource budget: " << e.what() << '\n';
        return kExitBudget;
    } catch (const invalid_bracket& e) {
        std::cerr << "ambiguous bracket: " << e.what() << '\n';
        return kExitAmbiguous;
    } catch (const invalid_parameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
