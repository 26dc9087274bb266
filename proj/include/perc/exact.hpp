#pragma once

#include <bit>
#include <cmath>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "perc/graph.hpp"
#include "perc/poly.hpp"
#include "perc/union_find.hpp"

namespace perc {

// Hard ceiling on the number of enumerated edges: 2^28 subsets is the
// desk-scale limit for configuration enumeration.
inline constexpr int kEnumerationBound = 28;

// N_k = number of k-edge subsets of `active` whose open edges connect u to
// v. Enumerates all 2^m subsets, rebuilding a disjoint-set forest per
// subset; partitioned over workers in fixed chunks, merged by integer sums,
// so the result is identical for any worker count.
inline std::vector<uint64_t> count_connecting_subsets(const Graph& g, VertexId u, VertexId v,
                                                      std::span<const EdgeId> active,
                                                      int workers = 0) {
    const int m = static_cast<int>(active.size());
    if (m > kEnumerationBound)
        throw budget_exceeded("subset enumeration refused: " + std::to_string(m) +
                              " edges exceeds the bound of " + std::to_string(kEnumerationBound));
    const uint64_t total = 1ull << m;

    auto count_range = [&](uint64_t begin, uint64_t end, std::vector<uint64_t>& counts) {
        DisjointSets ds(g.vertex_count);
        for (uint64_t mask = begin; mask < end; ++mask) {
            ds.reset(g.vertex_count);
            uint64_t bits = mask;
            while (bits) {
                const int b = std::countr_zero(bits);
                bits &= bits - 1;
                const Edge& e = g.edges[static_cast<size_t>(active[static_cast<size_t>(b)])];
                ds.unite(e.a, e.b);
            }
            if (ds.connected(u, v)) ++counts[static_cast<size_t>(std::popcount(mask))];
        }
    };

    if (workers <= 0)
        workers = m >= 20 ? static_cast<int>(std::thread::hardware_concurrency()) : 1;
    if (workers < 1) workers = 1;
    if (static_cast<uint64_t>(workers) > total) workers = 1;

    std::vector<std::vector<uint64_t>> partial(
        static_cast<size_t>(workers), std::vector<uint64_t>(static_cast<size_t>(m) + 1, 0));
    if (workers == 1) {
        count_range(0, total, partial[0]);
    } else {
        std::vector<std::thread> pool;
        const uint64_t chunk = total / static_cast<uint64_t>(workers);
        for (int w = 0; w < workers; ++w) {
            const uint64_t begin = chunk * static_cast<uint64_t>(w);
            const uint64_t end = w + 1 == workers ? total : begin + chunk;
            pool.emplace_back([&, begin, end, w] { count_range(begin, end, partial[static_cast<size_t>(w)]); });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<uint64_t> counts(static_cast<size_t>(m) + 1, 0);
    for (const auto& part : partial)
        for (size_t k = 0; k < counts.size(); ++k) counts[k] += part[k];
    return counts;
}

// Exact two-terminal connection polynomial: Q(p) = P_p(u <-> v) on g with
// the forced_closed edges deleted. Computed as
//   Q(p) = sum_k N_k p^k (1-p)^(m-k)
// and expanded binomially into exact integer coefficients.
inline IntPoly two_terminal_poly(const Graph& g, VertexId u, VertexId v,
                                 std::span<const EdgeId> forced_closed = {}, int workers = 0) {
    if (!g.has_vertex(u) || !g.has_vertex(v))
        throw invalid_parameter("two_terminal_poly: terminal off graph");
    if (u == v) return IntPoly::constant(1);

    const std::vector<EdgeId> active = edges_without(g, forced_closed);
    const int m = static_cast<int>(active.size());
    const std::vector<uint64_t> counts = count_connecting_subsets(g, u, v, active, workers);

    // Pascal triangle up to m; every entry fits comfortably in 64 bits.
    std::vector<std::vector<uint64_t>> choose(static_cast<size_t>(m) + 1);
    for (int n = 0; n <= m; ++n) {
        choose[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
        for (int k = 1; k < n; ++k)
            choose[static_cast<size_t>(n)][static_cast<size_t>(k)] =
                choose[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] +
                choose[static_cast<size_t>(n - 1)][static_cast<size_t>(k)];
    }

    std::vector<mpz_class> coeffs(static_cast<size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        if (counts[static_cast<size_t>(k)] == 0) continue;
        const mpz_class nk = mpz_class(static_cast<unsigned long>(counts[static_cast<size_t>(k)]));
        for (int j = 0; j + k <= m; ++j) {
            const mpz_class term =
                nk * mpz_class(static_cast<unsigned long>(
                         choose[static_cast<size_t>(m - k)][static_cast<size_t>(j)]));
            if (j % 2 == 0)
                coeffs[static_cast<size_t>(k + j)] += term;
            else
                coeffs[static_cast<size_t>(k + j)] -= term;
        }
    }
    return IntPoly(std::move(coeffs));
}

enum class ThetaTarget { peak, middle };

// Closed forms for the theta graph connection probabilities:
//   origin -> far peak:    1 - (1 - p^2)^(n-1)
//   origin -> any middle:  p + (1-p) p (1 - (1 - p^2)^(n-2))
inline IntPoly theta_closed_form(int n, ThetaTarget target) {
    if (n < 3) throw invalid_parameter("theta_closed_form: n must be >= 3");
    const IntPoly one = IntPoly::constant(1);
    const IntPoly p = IntPoly::variable();
    const IntPoly one_minus_p_sq = one - p * p;
    if (target == ThetaTarget::peak)
        return one - one_minus_p_sq.pow(static_cast<unsigned>(n - 1));
    return p + (one - p) * p * (one - one_minus_p_sq.pow(static_cast<unsigned>(n - 2)));
}

// log P(p) / log p for an exact connection polynomial. A zero probability
// yields +infinity (the empty-event convention).
inline double log_ratio_h(const IntPoly& connection_poly, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw invalid_parameter("log_ratio_h: p must lie in (0,1)");
    const double value = connection_poly.eval(p);
    if (value <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log(value) / std::log(p);
}

inline double log_ratio_h(const Graph& g, VertexId u, VertexId v,
                          std::span<const EdgeId> forced_closed, double p) {
    if (u == v) throw invalid_parameter("log_ratio_h: terminals must be distinct");
    return log_ratio_h(two_terminal_poly(g, u, v, forced_closed), p);
}

} // namespace perc
