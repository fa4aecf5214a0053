#pragma once

#include <stdexcept>
#include <string>

namespace qotto {

/// State violates the Heisenberg bound, or a parameterization cannot
/// represent it (pure states, states outside the product-form domain).
struct UnphysicalStateError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The homogeneous part of the cycle map is not a strict contraction,
/// so no unique limit cycle exists.
struct NoLimitCycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Population leaked into the top Fock levels beyond the configured
/// tolerance even at the maximum truncation dimension.
struct TruncationLeakError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive integrator could not meet the requested tolerance
/// (step underflow or step budget exhausted).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad run configuration (unknown key, unparsable value, invalid range).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qotto
