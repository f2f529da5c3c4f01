#pragma once

#include <stdexcept>
#include <string>

namespace altexp {

/// A size limit (points, vertices, group order) would be exceeded.
struct limit_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative method ran out of budget; carries the best estimate so far.
struct not_converged : std::runtime_error {
    not_converged(const std::string& what, double best) : std::runtime_error(what), best_estimate(best) {}
    double best_estimate;
};

/// A constructive step could not be carried out on this input.
struct construction_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace altexp
