#pragma once

#include <stdexcept>
#include <string>

namespace fkpp {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- problem construction ---------------------------------------------------

/// d(s) <= 0 detected somewhere on [-1, 1].
struct NonPositiveDiffusion : Error {
    using Error::Error;
};

/// g has no interior sign change, more than one, or the wrong orientation.
struct SignStructureViolation : Error {
    using Error::Error;
};

/// G(r) <= 0 at an interior grid point: the standing positivity hypothesis fails.
struct HypothesisGFails : Error {
    using Error::Error;
};

/// Adaptive quadrature could not meet the requested tolerance.
struct QuadratureFailure : Error {
    using Error::Error;
};

/// Log-log endpoint fit residual above threshold; exponents unusable.
struct PoorFit : Error {
    using Error::Error;
};

// --- shooting ----------------------------------------------------------------

/// Step controller drove the step size below h_min.
struct StepSizeCollapse : Error {
    using Error::Error;
};

/// Solution failed to lift off from zero at the left endpoint.
struct NonPositiveStart : Error {
    using Error::Error;
};

/// A zero crossing before s0 persisted after tolerance tightening.
struct PrematureCrossing : Error {
    using Error::Error;
};

// --- speed solve --------------------------------------------------------------

/// G(1) < 0: incompatible with the positivity hypothesis on G.
struct NegativeG1 : Error {
    using Error::Error;
};

/// Geometric descent passed the a-priori speed cap without an undershoot.
struct BracketExhausted : Error {
    using Error::Error;
};

/// Bisection failed to converge within the iteration budget.
struct NonConvergent : Error {
    using Error::Error;
};

// --- reconstruction -----------------------------------------------------------

/// Endpoint quadrature diverges although the interface was classified finite.
struct SingularQuadratureFailure : Error {
    using Error::Error;
};

/// Phase-plane profile is not positive on the open interval.
struct ProfileNotPositive : Error {
    using Error::Error;
};

/// An operation needing decay exponents was called without usable ones.
struct ExponentUnavailable : Error {
    using Error::Error;
};

// --- front end ----------------------------------------------------------------

/// Malformed configuration file or invalid option combination.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace fkpp
