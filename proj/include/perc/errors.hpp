#pragma once

#include <stdexcept>
#include <string>

namespace perc {

// Domain violation in an argument (bad n, point off the graph, ...).
struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured resource ceiling would be exceeded (vertex budget,
// subset enumeration bound).
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bracketing precondition failed: no sign change, or the Monte Carlo
// endpoints are not statistically significant.
struct invalid_bracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace perc
