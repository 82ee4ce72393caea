#pragma once

#include <string>
#include <vector>

#include "fkpp/problem.hpp"
#include "fkpp/shoot.hpp"
#include "fkpp/speed.hpp"
#include "fkpp/wave.hpp"

namespace fkpp {

/// Outcome of one executable invariant check. Failures are reported, not
/// thrown; negative controls are expected to fail and make a vacuous harness
/// detectable.
struct PropertyReport {
    std::string check_name;
    bool passed = false;
    double margin = 0.0;  // worst-case signed slack actually measured
    std::string context;
    bool negative_control = false;
};

/// A problem with a planted solution y*(r) = kappa (1+r)^a (1-r)^b and speed
/// c, obtained by solving the phase-plane equation for g. Provides an exact
/// oracle for arbitrary p.
struct ManufacturedProblem {
    double kappa = 1.0;
    double a = 2.0;
    double b = 2.0;
    double c_target = -1.0;
    double p = 2.0;
    ProblemSpec spec;

    double y_star(double r) const;
    double y_star_deriv(double r) const;
};

/// Builds the manufactured problem and validates the sign hypotheses of the
/// induced g; parameter sets that violate them are rejected
/// (SignStructureViolation / HypothesisGFails).
ManufacturedProblem manufactured_problem(double kappa, double a, double b,
                                         double c, double p);

/// Decay exponents of the manufactured g: the derivative term and the speed
/// term compete at each endpoint.
double manufactured_gamma_minus(double a, double p);
double manufactured_gamma_plus(double b, double p);

/// Shots at c1 <= c2 <= 0 stay pointwise ordered (within 2 tol) and their
/// terminal outcomes are ordered Undershoot < Converged < Overshoot.
PropertyReport check_forward_comparison(const ProblemSpec& spec, double c1,
                                        double c2, double tol);

/// Terminal-side ordering on [s0, 1]: the clamped shot at c <= c* lies below
/// the wave profile all the way to the boundary.
PropertyReport check_backward_comparison(const ProblemSpec& spec, double c,
                                         double tol);

/// Power-law envelopes near -1 on the window (-1, -1+rho): two-sided when
/// gamma <= 1/(p-1) (with the comparison-function coefficients located
/// numerically by sign-definiteness of the phase-plane operator applied to
/// kappa (1+r)^(1+gamma)), upper bound only otherwise.
PropertyReport check_envelopes(const ProblemSpec& spec, const CStarResult& result,
                               double rho);

/// First-integral identity d(U)^p' |U'|^p = y(U) on interior samples, plus a
/// same-profile coarsening check of the second-order equation residual.
PropertyReport check_first_integral(const ProblemSpec& spec,
                                    const WaveProfile& profile, double tol);

/// Centered finite-difference residual of the second-order travelling-wave
/// equation decreases by ~4x when the sample count doubles.
PropertyReport check_residual_refinement(const ProblemSpec& spec,
                                         const CStarResult& result, int n_base);

/// f -> lambda f rescales the speed by sqrt(lambda) for p = 2, d = 1;
/// asserted at lambda = 4 on the cubic family.
PropertyReport check_scaling_coherence(double s0);

/// Maximum |fd residual| of the second-order equation over interior samples.
double fd_residual(const ProblemSpec& spec, const WaveProfile& profile,
                   double u_interior = 0.9, int stride = 1);

struct MatrixOptions {
    double tol_c = 1e-10;
    double tol_ode = 1e-12;
    double tol_ode_abs = 1e-20;      // boundary-regime cells need sharp tails
    double c_tolerance = 1e-8;       // recovery accuracy demanded of c
    double profile_tolerance = 1e-6; // sup-norm accuracy demanded of y
};

/// The fixed manufactured test matrix {p in 1.5,2,3} x {(a,b)} x {c}. Cells
/// whose induced g cannot satisfy the sign hypotheses for any admissible
/// kappa are expected to be rejected by the validator; all constructible
/// cells must recover the planted speed and profile.
std::vector<PropertyReport> run_manufactured_matrix(const MatrixOptions& opts = {});

/// Instance-level suite: comparisons, envelopes, first integral, refinement,
/// plus built-in negative controls. Reports sorted by check name.
std::vector<PropertyReport> run_suite(const ProblemSpec& spec,
                                      const SolveOptions& opts = {});

/// True when every regular check passed and every negative control failed.
bool aggregate_pass(const std::vector<PropertyReport>& reports);

}  // namespace fkpp
