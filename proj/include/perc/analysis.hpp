#pragma once

#include <cmath>
#include <string>

#include "perc/poly.hpp"

namespace perc {

// f_lambda(t) = a e^{-t lambda} + b e^{-(1-t) lambda} - c e^{-lambda}
// for a,b,c in [0,1], lambda > 0, t in [0,1].
inline double f_lambda(double a, double b, double c, double lambda, double t) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0 && c >= 0.0 && c <= 1.0))
        throw invalid_parameter("f_lambda: a,b,c must lie in [0,1]");
    if (!(lambda > 0.0)) throw invalid_parameter("f_lambda: lambda must be > 0");
    if (!(t >= 0.0 && t <= 1.0)) throw invalid_parameter("f_lambda: t must lie in [0,1]");
    return a * std::exp(-t * lambda) + b * std::exp(-(1.0 - t) * lambda) - c * std::exp(-lambda);
}

enum class FMinCase {
    min_at_0,
    min_at_1,
    interior,
    degenerate_min_at_0, // a = 0, b > 0: f is increasing in t
    degenerate_constant, // a = 0, b = 0: f does not depend on t
};

inline const char* fmin_case_name(FMinCase c) {
    switch (c) {
        case FMinCase::min_at_0: return "min_at_0";
        case FMinCase::min_at_1: return "min_at_1";
        case FMinCase::interior: return "interior";
        case FMinCase::degenerate_min_at_0: return "degenerate_min_at_0";
        default: return "degenerate_constant";
    }
}

struct FMinResult {
    FMinCase case_label = FMinCase::interior;
    double t_star = 0.0;
    double value = 0.0;
};

// Minimum of f_lambda over t in [0,1]:
//   at t=1 when b/a <= e^{-lambda}, at t=0 when b/a >= e^{lambda},
//   else interior at t0 = 1/2 - ln(b/a) / (2 lambda).
// a = 0 leaves the ratio undefined; f is then monotone in t and the result
// carries a distinct degenerate label.
inline FMinResult minimize_f(double a, double b, double c, double lambda) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0 && c >= 0.0 && c <= 1.0))
        throw invalid_parameter("minimize_f: a,b,c must lie in [0,1]");
    if (!(lambda > 0.0)) throw invalid_parameter("minimize_f: lambda must be > 0");
    FMinResult res;
    if (a == 0.0) {
        res.case_label = b == 0.0 ? FMinCase::degenerate_constant : FMinCase::degenerate_min_at_0;
        res.t_star = 0.0;
        res.value = f_lambda(a, b, c, lambda, 0.0);
        return res;
    }
    const double ratio = b / a;
    if (ratio <= std::exp(-lambda)) {
        res.case_label = FMinCase::min_at_1;
        res.t_star = 1.0;
    } else if (ratio >= std::exp(lambda)) {
        res.case_label = FMinCase::min_at_0;
        res.t_star = 0.0;
    } else {
        res.case_label = FMinCase::interior;
        res.t_star = 0.5 - std::log(ratio) / (2.0 * lambda);
    }
    res.value = f_lambda(a, b, c, lambda, res.t_star);
    return res;
}

// Upper bound on P_lambda(o <-> t e1): e^{-lambda t} + e^{-lambda(1-t)} - e^{-lambda}.
inline double bound_mid(double lambda, double t) {
    if (!(lambda > 0.0)) throw invalid_parameter("bound_mid: lambda must be > 0");
    if (!(t > 0.0 && t < 1.0)) throw invalid_parameter("bound_mid: t must lie in (0,1)");
    return std::exp(-lambda * t) + std::exp(-lambda * (1.0 - t)) - std::exp(-lambda);
}

// Lower bound on P_lambda(o <-> e1) from the paths of at most three edges:
// 1 - (1 - e^{-3 lambda})^{2(d-1)} (1 - e^{-lambda}).
inline double bound_vertex(double lambda, int d) {
    if (!(lambda > 0.0)) throw invalid_parameter("bound_vertex: lambda must be > 0");
    if (d < 2) throw invalid_parameter("bound_vertex: d must be >= 2");
    return 1.0 - std::pow(1.0 - std::exp(-3.0 * lambda), 2.0 * (d - 1)) *
                     (1.0 - std::exp(-lambda));
}

// The decomposition of the axis connection probability over the state of
// the direct edge: P(o <-> t e1) = e^{-t lambda} + C (e^{-(1-t) lambda} - e^{-lambda})
// with C the conditional connection probability given {o,e1} closed.
inline double axis_decomposition(double lambda, double t, double conditional) {
    if (!(lambda > 0.0)) throw invalid_parameter("axis_decomposition: lambda must be > 0");
    if (!(t > 0.0 && t <= 1.0)) throw invalid_parameter("axis_decomposition: t must lie in (0,1]");
    return std::exp(-t * lambda) +
           conditional * (std::exp(-(1.0 - t) * lambda) - std::exp(-lambda));
}

// g(z) = z^11 + 2 (z^10 + z^9 + z^8 + z^7 + z^6 - z^4 - z^3 - z^2 - z - 1).
inline IntPoly g_poly() {
    return IntPoly{-2, -2, -2, -2, -2, 0, 2, 2, 2, 2, 2, 1};
}

// Residual of the factorization
//   1 - (1 - z^6)^2 (1 - z^2) - z(2 - z) = z (z - 1)^2 g(z),
// exactly expanded; the zero polynomial iff the identity holds.
inline IntPoly g_identity_residual() {
    const IntPoly one = IntPoly::constant(1);
    const IntPoly z = IntPoly::variable();
    const IntPoly lhs =
        one - (one - z.pow(6)).pow(2) * (one - z * z) - z * (IntPoly::constant(2) - z);
    const IntPoly rhs = z * (z - one).pow(2) * g_poly();
    return lhs - rhs;
}

// Largest root of g in (0,1), bracketed in (0.9, 1); below it the
// bound-comparison argument fails. Reported as a bracket of width <= tol
// rather than a bare float.
inline RootBracket z0_bracket(double tol = 1e-12) {
    const IntPoly g = g_poly();
    RootBracket bracket{mpq_class(9, 10), mpq_class(1)};
    int slo = g.sign_at(bracket.lo);
    const int shi = g.sign_at(bracket.hi);
    if (slo >= 0 || shi <= 0) throw invalid_bracket("z0_bracket: no sign change in (0.9, 1)");
    const mpq_class width_goal = rat_from_double(tol);
    while (bracket.hi - bracket.lo > width_goal) {
        mpq_class mid = (bracket.lo + bracket.hi) / 2;
        if (g.sign_at(mid) == slo)
            bracket.lo = std::move(mid);
        else
            bracket.hi = std::move(mid);
    }
    return bracket;
}

inline double z0_threshold(double tol = 1e-12) {
    const RootBracket b = z0_bracket(tol);
    return (mpq_class((b.lo + b.hi) / 2)).get_d();
}

// Sufficient threshold from the theta-graph bound: the peak beats the
// middle for every p >= (1 - 2^{-1/(n-3)})^{1/2}.
inline double theta_threshold(int n) {
    if (n < 4) throw invalid_parameter("theta_threshold: n must be >= 4");
    return std::sqrt(1.0 - std::exp2(-1.0 / (n - 3)));
}

// Low-p threshold as printed: (2d(2d-1))^{-1/2}.
inline double p0(int d) {
    if (d < 2) throw invalid_parameter("p0: d must be >= 2");
    return 1.0 / std::sqrt(2.0 * d * (2.0 * d - 1.0));
}

// Solving 2d(2d-1)^2 p^3 < p instead gives the smaller (safe) constant
// (2d)^{-1/2} (2d-1)^{-1}; kept alongside the printed one.
inline double p0_conservative(int d) {
    if (d < 2) throw invalid_parameter("p0_conservative: d must be >= 2");
    return 1.0 / (std::sqrt(2.0 * d) * (2.0 * d - 1.0));
}

inline double lambda_of_p(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw invalid_parameter("lambda_of_p: p must lie in (0,1]");
    return -std::log(p);
}

inline double p_of_lambda(double lambda) {
    if (!(lambda >= 0.0)) throw invalid_parameter("p_of_lambda: lambda must be >= 0");
    return std::exp(-lambda);
}

} // namespace perc
