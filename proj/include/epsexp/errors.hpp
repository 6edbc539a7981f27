#pragma once

#include <stdexcept>
#include <string>

namespace epsexp {

/// Base class for every error thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arithmetic attempted between scalars from different backends.
struct backend_mismatch : error {
    using error::error;
};

/// Exact division by zero (or a float divisor that is exactly zero).
struct division_by_zero : error {
    using error::error;
};

/// Malformed literal or parameter string.
struct parse_error : error {
    using error::error;
};

/// A pi-valued literal was requested in the exact backend.
struct pi_not_exact : error {
    using error::error;
};

/// Index outside the valid range of a table or kernel.
struct out_of_range_error : error {
    using error::error;
};

/// A reciprocal Pochhammer value hit a zero factor beta + l.
struct pole_at_beta : error {
    using error::error;
};

/// A lower parameter is a nonpositive integer with zero slope: the pole
/// cannot be regularized and the function is undefined.
struct unresolvable_pole : error {
    using error::error;
};

/// Series requested outside its convergence domain.
struct divergent_series : error {
    using error::error;
};

/// Adaptive truncation hit its cap without meeting the tolerance.
struct truncation_not_converged : error {
    using error::error;
};

/// Request violates a structural precondition (sizes, modes, config values).
struct bad_request : error {
    using error::error;
};

} // namespace epsexp
