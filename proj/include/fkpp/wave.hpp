#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "fkpp/problem.hpp"
#include "fkpp/speed.hpp"

namespace fkpp {

enum class Finiteness { Finite, Infinite, Undetermined };

struct SideCriterion {
    double gamma = 0.0;
    double p_minus_one = 0.0;
};

/// Finite/infinite classification of the two interface locations.
/// `left` describes x1 (where U reaches +1, governed by gamma_plus),
/// `right` describes x_minus1 (where U reaches -1, governed by gamma_minus).
struct InterfaceClass {
    Finiteness left = Finiteness::Undetermined;
    Finiteness right = Finiteness::Undetermined;
    SideCriterion left_criterion;
    SideCriterion right_criterion;
};

/// The gamma-versus-(p-1) rule: for 1 < p <= 2 finiteness is equivalent to
/// gamma < p-1; for p > 2 only gamma >= p-1 (infinite) is decided, the rest
/// is Undetermined.
InterfaceClass classify_interfaces(const AsymptoticExponents& exponents, double p);

struct ReconstructOptions {
    double tol_quad = 1e-10;
    double edge_offset = 1e-4;  // stitch distance of the analytic endpoint tails
};

/// Physical wave profile: samples of U and U' on a uniform grid in the wave
/// coordinate, the anchoring constant, and the interface locations (infinite
/// sides hold +-infinity). Value object, safe to share.
struct WaveProfile {
    std::vector<double> xi;
    std::vector<double> u;
    std::vector<double> du;
    double x0 = 0.0;
    double x1 = 0.0;        // -inf when the left interface is not attained
    double x_minus1 = 0.0;  // +inf when the right interface is not attained
    double x1_err = 0.0;    // truncation error bar of the analytic tail
    double x_minus1_err = 0.0;
    double c_star = 0.0;
    InterfaceClass iface;

    struct TailModel {
        bool valid = false;
        double exponent = 0.0;  // y ~ kappa * t^exponent, t = distance to +-1
        double kappa = 0.0;
        double integrand_coef = 0.0;  // d(+-1)^(1/(p-1)) * kappa^(-1/p)
        double singularity = 0.0;     // integrand ~ coef * t^(-singularity)
        double delta = 0.0;           // stitch distance
        double x_edge = 0.0;          // x at the stitch point
    };
    TailModel tail_left;   // toward U = +1
    TailModel tail_right;  // toward U = -1

    std::shared_ptr<const ProblemSpec> problem;
    std::shared_ptr<const Trajectory> phase;  // y(r) backing this profile
};

/// Converts the phase-plane solution into the physical profile by the
/// separable quadrature x(U) = x0 - int_0^U (d/V)^(1/(p-1)), with analytic
/// power-law panels stitched at edge_offset from the endpoints, then inverts
/// x(U) onto a uniform xi grid.
WaveProfile reconstruct(const ProblemSpec& spec, const CStarResult& result,
                        double x0 = 0.0, int n = 2048,
                        const ReconstructOptions& opts = {});

/// (U, U') at an arbitrary wave coordinate; constant states +-1 beyond finite
/// interfaces, tail-model extrapolation between the sampled range and an
/// interface.
std::pair<double, double> evaluate(const WaveProfile& profile, double xi);

}  // namespace fkpp
