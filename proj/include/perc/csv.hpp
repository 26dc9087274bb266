#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "perc/estimate.hpp"

namespace perc {

// Shortest round-trip decimal form; keeps CSV output byte-stable for a
// given configuration.
inline std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// '#'-prefixed key=value header block echoing the full run configuration.
inline void csv_comment(std::ostream& out, const std::string& key, const std::string& value) {
    out << "# " << key << '=' << value << '\n';
}

inline constexpr const char* kMcCsvHeader =
    "tag,d,lattice,p,radius,samples,seed,successes,mean,ci_half_width";

inline std::string mc_csv_row(const std::string& tag, int d, const std::string& lattice, double p,
                              int radius, uint64_t seed, const Estimate& est) {
    return tag + ',' + std::to_string(d) + ',' + lattice + ',' + fmt_double(p) + ',' +
           std::to_string(radius) + ',' + std::to_string(est.samples) + ',' +
           std::to_string(seed) + ',' + std::to_string(est.successes) + ',' +
           fmt_double(est.mean) + ',' + fmt_double(est.ci_half_width);
}

inline constexpr const char* kDustCsvHeader =
    "lambda,t,radius,samples,seed,successes,mean,ci_half_width";

inline std::string dust_csv_row(double lambda, double t, int radius, uint64_t seed,
                                const Estimate& est) {
    return fmt_double(lambda) + ',' + fmt_double(t) + ',' + std::to_string(radius) + ',' +
           std::to_string(est.samples) + ',' + std::to_string(seed) + ',' +
           std::to_string(est.successes) + ',' + fmt_double(est.mean) + ',' +
           fmt_double(est.ci_half_width);
}

} // namespace perc
