#pragma once

#include <limits>
#include <vector>

#include "fkpp/problem.hpp"

namespace fkpp {

/// Terminal classification of one shot.
struct ShotOutcome {
    enum class Kind { Undershoot, Overshoot, Converged };
    Kind kind = Kind::Converged;
    double r0 = std::numeric_limits<double>::quiet_NaN();  // crossing (Undershoot)
    double y1 = std::numeric_limits<double>::quiet_NaN();  // terminal value
};

/// Order used by the monotonicity checks:
/// Undershoot (by crossing location) < Converged < Overshoot (by value).
bool outcome_leq(const ShotOutcome& a, const ShotOutcome& b, double slack);

struct ShootOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_min = 1e-13;
    double h_max = 1e-2;
    double startup_offset = 1e-6;  // first node sits at -1 + startup_offset
    bool stop_at_crossing = true;
    int tighten_retries = 2;  // re-runs after a crossing before s0
};

/// One integrated shot y_c. Nodes are the accepted steps of the embedded
/// Runge-Kutta pair; derivs holds the right-hand side at each node, which
/// makes the trajectory cubic-Hermite dense.
struct Trajectory {
    double c = 0.0;
    double tol = 0.0;  // the rtol this shot ran at
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> derivs;
    ShotOutcome outcome;

    double operator()(double r) const;  ///< dense value
    double deriv(double r) const;
};

/// Integrates y' = p'(c (y+)^(1/p) + g(r)), y(-1) = 0, forward over [-1, 1].
///
/// Requires c <= 0 (positive speeds admit no boundary-value solution and the
/// initial value problem loses one-sided uniqueness). Startup at the
/// degenerate initial point uses an asymptotics-aware seed at
/// -1 + startup_offset. Integration halts at the first zero crossing past s0
/// unless stop_at_crossing is false, in which case the crossing is still
/// recorded in the outcome but the trajectory continues to r = 1.
Trajectory shoot(const ProblemSpec& spec, double c, const ShootOptions& opts);
Trajectory shoot(const ProblemSpec& spec, double c, double tol = 1e-10);

/// Convenience wrapper returning just the terminal classification.
ShotOutcome terminal_value(const ProblemSpec& spec, double c, double tol = 1e-10);

}  // namespace fkpp
