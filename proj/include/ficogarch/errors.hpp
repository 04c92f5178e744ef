#pragma once

#include <stdexcept>
#include <string>

namespace ficogarch {

/// Invalid model, kernel or grid specification.
struct spec_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Kernel evaluation requested at one of its documented singular points.
struct singular_point_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Requested integral is classified as divergent.
struct diverges_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Quadrature could not certify the requested tolerance.
struct tolerance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input data unusable for the requested estimator (too short, degenerate,
/// off-grid lags, ensemble too small, ...).
struct data_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace ficogarch
