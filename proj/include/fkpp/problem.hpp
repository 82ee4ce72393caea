#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fkpp {

using ScalarFn = std::function<double(double)>;

enum class ExponentSource { UserSupplied, Estimated };

/// Power-law behavior of g at the endpoints:
///   g(r) ~  gamma0_minus * (1+r)^gamma_minus   as r -> -1,
///   g(r) ~ -gamma0_plus  * (1-r)^gamma_plus    as r -> +1.
struct AsymptoticExponents {
    double gamma_minus = 0.0;
    double gamma0_minus = 0.0;
    double gamma_plus = 0.0;
    double gamma0_plus = 0.0;
    ExponentSource source = ExponentSource::Estimated;
    double residual_minus = 0.0;  // rms log-fit residual (Estimated only)
    double residual_plus = 0.0;
};

struct BuildOptions {
    int scan_points = 1024;        // uniform grid used to locate s0
    int validation_points = 1024;  // Chebyshev grid for the hypothesis checks
    double roundoff_tol = 1e-10;   // violations below this are roundoff
    double s0_bisect_tol = 1e-12;
    double validation_quad_tol = 1e-14;  // per-panel tolerance of the G check
    bool check_hypothesis_G = true;
    bool estimate_exponents = true;  // attempt a fit when none are supplied
    double exponent_window = 0.015625;  // 2^-6
    double exponent_fit_threshold = 0.05;
    std::optional<AsymptoticExponents> exponents;  // user supplied, wins over fits
};

/// Immutable description of one reaction-diffusion problem: the exponent p,
/// the coefficient handles d and f, the transformed reaction
/// g(r) = d(r)^(1/(p-1)) f(r), its interior zero s0, and (optionally) the
/// endpoint decay exponents. Function handles must be pure; a ProblemSpec is
/// safe to share across concurrent solves.
struct ProblemSpec {
    double p = 2.0;
    double p_conj = 2.0;  // p' = p/(p-1)
    ScalarFn diffusion;
    ScalarFn reaction;
    ScalarFn g;
    double s0 = 0.0;
    std::optional<AsymptoticExponents> exponents;
    double d_min = 0.0;   // min of d over the validation grid
    double sup_g = 0.0;   // max |g| over the validation grid
    std::string family;   // short free-form description for reports
};

/// Validates the sign hypotheses of d, f, g and the positivity of G, locates
/// s0, and attaches decay exponents. Throws NonPositiveDiffusion,
/// SignStructureViolation or HypothesisGFails when a hypothesis fails.
ProblemSpec build_problem(double p, ScalarFn diffusion, ScalarFn reaction,
                          const BuildOptions& opts = {});

/// G(r) = integral of g over [-1, r], adaptive with an a-priori split at s0.
/// G(-1) = 0 exactly.
double potential_G(const ProblemSpec& spec, double r, double abs_tol = 1e-10);

/// Least-squares fit of log|g| against log(distance to endpoint) on a
/// geometric ladder of sample points inside each window. Throws PoorFit when
/// a residual exceeds the threshold.
AsymptoticExponents estimate_exponents(const ProblemSpec& spec,
                                       double window = 0.015625,
                                       double fit_threshold = 0.05);

// --- builtin families --------------------------------------------------------

/// f(s) = (s^2 - 1)(s - s0) with unit diffusion.
ProblemSpec make_cubic_bistable(double s0, double p = 2.0, BuildOptions opts = {});

/// f(s) = |s^2-1|^(alpha-2) (s^2-1) s, the gradient of the double-well
/// potential |s^2-1|^alpha / (2 alpha); odd, so G(1) = 0. Unit diffusion.
ProblemSpec make_double_well(double alpha, double p = 2.0, BuildOptions opts = {});

/// f(s) = -(1-s^2)^(alpha-1) (s - s0): Hoelder endpoints of order alpha-1
/// with an off-center interior zero. Unit diffusion.
ProblemSpec make_alpha_bistable(double alpha, double s0, double p = 2.0,
                                BuildOptions opts = {});

/// g given by a table over strictly increasing abscissae covering [-1, 1];
/// monotone piecewise-cubic interpolation with linear end intervals.
ProblemSpec make_tabulated(std::vector<double> s, std::vector<double> g_values,
                           double p, BuildOptions opts = {});

}  // namespace fkpp
