#ifndef MCNET_ERRORS_HPP
#define MCNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mcnet {

// Parameter or configuration rejected; message names the violated rule.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature ran out of subdivisions before reaching tolerance.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation requires at least one small BS per cluster (c_bar >= 1).
struct DegenerateCluster : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyPattern : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDistance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mcnet

#endif
