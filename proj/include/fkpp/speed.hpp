#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fkpp/problem.hpp"
#include "fkpp/shoot.hpp"

namespace fkpp {

enum class Branch { TravellingWave, Stationary };

struct SolveOptions {
    double tol_c = 1e-10;
    double tol_ode = 1e-10;
    double tol_ode_abs = -1.0;  // < 0: use 1e-2 * tol_ode
    double tol_quad = 1e-10;
    double stationary_tol_scale = 1e-12;  // |G(1)| <= scale*max(1, sup|g|)
    int max_bisect_iters = 200;
    int stationary_samples = 2049;
};

struct BracketStep {
    double c_lo;
    double c_hi;
    ShotOutcome::Kind outcome;  // outcome of the shot that produced this update
};

/// Converged wave speed and the boundary-value profile that goes with it.
struct CStarResult {
    double c_star = 0.0;
    Branch branch = Branch::TravellingWave;
    std::vector<BracketStep> bracket_history;
    Trajectory profile;
    double terminal_residual = 0.0;
    double a_priori_cap = 0.0;  // NaN on the stationary branch
    int iterations = 0;
    std::string note;
};

/// Stationary when |G(1)| is below tolerance, travelling wave when G(1) > 0.
/// Throws NegativeG1 when G(1) < -tol (incompatible with G > 0 on (-1,1)).
Branch classify_branch(const ProblemSpec& spec, double tol);

/// Default stationary threshold: stationary_tol_scale * max(1, sup|g|).
double stationary_threshold(const ProblemSpec& spec, const SolveOptions& opts = {});

/// Initial bisection bracket (c_lo, c_hi = 0): geometric descent
/// c = -1, -2, -4, ... until an undershoot, capped by the a-priori bound
/// |c| <= (p' G(s0))^(1/p') / (1 - s0).
std::pair<double, double> bracket(const ProblemSpec& spec,
                                  const SolveOptions& opts = {});

double a_priori_speed_cap(const ProblemSpec& spec, double tol_quad = 1e-12);

/// Finds the unique speed: the stationary branch returns c* = 0 with the
/// profile p' G sampled on a Chebyshev grid; the travelling-wave branch
/// bisects the overshoot/undershoot predicate, which is monotone in c, and
/// re-shoots the overshoot-side endpoint at tol_ode / 10.
CStarResult solve_cstar(const ProblemSpec& spec, const SolveOptions& opts);
CStarResult solve_cstar(const ProblemSpec& spec, double tol_c = 1e-10,
                        double tol_ode = 1e-10);

}  // namespace fkpp
