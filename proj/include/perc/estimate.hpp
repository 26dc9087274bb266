#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "perc/errors.hpp"

namespace perc {

inline constexpr double kZ95 = 1.959963984540054;  // two-sided 95%
inline constexpr double kZ99 = 2.5758293035489004; // two-sided 99%

// Monte Carlo proportion with a Wilson score interval. Wilson rather than
// Wald because several targets sit next to 0 or 1.
struct Estimate {
    uint64_t successes = 0;
    uint64_t samples = 0;
    double mean = 0.0;
    double ci_half_width = 0.0;
    double z = kZ95;

    double wilson_center() const {
        const double n = static_cast<double>(samples);
        return (mean + z * z / (2.0 * n)) / (1.0 + z * z / n);
    }
    double lo() const { return std::max(0.0, wilson_center() - ci_half_width); }
    double hi() const { return std::min(1.0, wilson_center() + ci_half_width); }
};

inline Estimate make_estimate(uint64_t successes, uint64_t samples, double z = kZ95) {
    if (samples == 0) throw invalid_parameter("estimate: needs at least one sample");
    if (successes > samples) throw invalid_parameter("estimate: successes > samples");
    Estimate e;
    e.successes = successes;
    e.samples = samples;
    e.z = z;
    const double n = static_cast<double>(samples);
    e.mean = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    e.ci_half_width =
        z * std::sqrt(e.mean * (1.0 - e.mean) / n + z * z / (4.0 * n * n)) / denom;
    return e;
}

// Paired difference of two indicator streams run on common random numbers:
// mean of D_i = a_i - b_i with a normal CI (the per-sample variance of D is
// estimated, which is where the coupling pays off).
struct PairedDiff {
    uint64_t gained = 0; // samples with a=1, b=0
    uint64_t lost = 0;   // samples with a=0, b=1
    uint64_t samples = 0;
    double z = kZ99;

    double mean() const {
        return (static_cast<double>(gained) - static_cast<double>(lost)) /
               static_cast<double>(samples);
    }
    double ci_half_width() const {
        const double n = static_cast<double>(samples);
        const double m = mean();
        const double var = (static_cast<double>(gained) + static_cast<double>(lost)) / n - m * m;
        return z * std::sqrt(std::max(var, 0.0) / n);
    }
    double lo() const { return mean() - ci_half_width(); }
    double hi() const { return mean() + ci_half_width(); }
};

} // namespace perc
