#include "fkpp/speed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fkpp/errors.hpp"
#include "fkpp/quadrature.hpp"

namespace fkpp {

namespace {

Trajectory stationary_profile(const ProblemSpec& spec, const SolveOptions& opts) {
    const int n = std::max(opts.stationary_samples, 33);
    Trajectory traj;
    traj.c = 0.0;
    traj.tol = opts.tol_quad;
    traj.nodes.resize(n);
    traj.values.resize(n);
    traj.derivs.resize(n);
    for (int i = 0; i < n; ++i) {
        traj.nodes[i] = -std::cos(std::numbers::pi * i / (n - 1));
    }
    traj.nodes.front() = -1.0;
    traj.nodes.back() = 1.0;

    QuadratureOptions q{.abs_tol = 1e-14};
    const std::array<double, 1> split{spec.s0};
    double acc = 0.0;
    traj.values[0] = 0.0;
    traj.derivs[0] = spec.p_conj * spec.g(-1.0);
    for (int i = 1; i < n; ++i) {
        acc += integrate(spec.g, traj.nodes[i - 1], traj.nodes[i], q, split);
        traj.values[i] = spec.p_conj * acc;
        traj.derivs[i] = spec.p_conj * spec.g(traj.nodes[i]);
    }
    traj.outcome = {ShotOutcome::Kind::Converged,
                    std::numeric_limits<double>::quiet_NaN(),
                    traj.values.back()};
    return traj;
}

ShootOptions shot_options(const SolveOptions& opts) {
    ShootOptions s;
    s.rtol = opts.tol_ode;
    s.atol = opts.tol_ode_abs > 0.0 ? opts.tol_ode_abs : 1e-2 * opts.tol_ode;
    return s;
}

}  // namespace

double stationary_threshold(const ProblemSpec& spec, const SolveOptions& opts) {
    return opts.stationary_tol_scale * std::max(1.0, spec.sup_g);
}

Branch classify_branch(const ProblemSpec& spec, double tol) {
    const double g1 = potential_G(spec, 1.0, std::min(tol, 1e-12));
    if (g1 < -tol) {
        throw NegativeG1("G(1) = " + std::to_string(g1) +
                         " < 0 contradicts the positivity of G on (-1, 1)");
    }
    return std::abs(g1) <= tol ? Branch::Stationary : Branch::TravellingWave;
}

double a_priori_speed_cap(const ProblemSpec& spec, double tol_quad) {
    const double y0_s0 = spec.p_conj * potential_G(spec, spec.s0, tol_quad);
    return std::pow(y0_s0, 1.0 / spec.p_conj) / (1.0 - spec.s0);
}

std::pair<double, double> bracket(const ProblemSpec& spec,
                                  const SolveOptions& opts) {
    if (classify_branch(spec, stationary_threshold(spec, opts)) !=
        Branch::TravellingWave) {
        throw Error("bracket: requires the travelling-wave branch (G(1) > 0)");
    }
    const double cap = a_priori_speed_cap(spec, opts.tol_quad);
    const ShootOptions sopts = shot_options(opts);
    double c = -1.0;
    while (true) {
        const auto traj = shoot(spec, c, sopts);
        if (traj.outcome.kind == ShotOutcome::Kind::Undershoot) {
            return {c, 0.0};
        }
        if (-c > cap * (1.0 + 1e-9)) {
            throw BracketExhausted(
                "no undershoot found down to c = " + std::to_string(c) +
                " although the a-priori cap is " + std::to_string(cap));
        }
        c *= 2.0;
    }
}

CStarResult solve_cstar(const ProblemSpec& spec, const SolveOptions& opts) {
    CStarResult result;
    const double branch_tol = stationary_threshold(spec, opts);
    result.branch = classify_branch(spec, branch_tol);

    if (result.branch == Branch::Stationary) {
        result.c_star = 0.0;
        result.profile = stationary_profile(spec, opts);
        result.terminal_residual = std::abs(result.profile.values.back());
        result.a_priori_cap = std::numeric_limits<double>::quiet_NaN();
        result.iterations = 0;
        return result;
    }

    const double g1 = potential_G(spec, 1.0, opts.tol_quad);
    if (g1 <= 1e3 * branch_tol) {
        result.note = "G(1) barely positive: |c*| will be tiny and poorly "
                      "conditioned";
    }
    result.a_priori_cap = a_priori_speed_cap(spec, opts.tol_quad);

    auto [c_lo, c_hi] = bracket(spec, opts);
    result.bracket_history.push_back(
        {c_lo, c_hi, ShotOutcome::Kind::Undershoot});

    const ShootOptions sopts = shot_options(opts);
    int iter = 0;
    while (c_hi - c_lo >= opts.tol_c) {
        if (++iter > opts.max_bisect_iters) {
            throw NonConvergent("bisection exceeded " +
                                std::to_string(opts.max_bisect_iters) +
                                " iterations");
        }
        const double c_mid = 0.5 * (c_lo + c_hi);
        const auto traj = shoot(spec, c_mid, sopts);
        if (traj.outcome.kind == ShotOutcome::Kind::Undershoot) {
            c_lo = c_mid;
        } else {
            c_hi = c_mid;
        }
        result.bracket_history.push_back({c_lo, c_hi, traj.outcome.kind});
    }
    result.iterations = iter;

    // Report the overshoot-side endpoint: its trajectory is positive on all
    // of (-1, 1] and its terminal value is the (reported) residual. A re-shot
    // that grazes zero just before r = 1 counts as boundary-converged: when
    // the terminal value is insensitive to c, the graze point cannot be
    // nudged across the boundary.
    ShootOptions fine = sopts;
    fine.rtol = opts.tol_ode * 0.1;
    fine.atol = sopts.atol * 0.1;
    auto acceptable = [](const Trajectory& t) {
        return t.outcome.kind != ShotOutcome::Kind::Undershoot ||
               t.outcome.r0 >= 1.0 - 1e-3;
    };
    double c_star = c_hi;
    Trajectory profile = shoot(spec, c_star, fine);
    int nudges = 0;
    while (!acceptable(profile) && nudges < 12) {
        c_star += std::ldexp(opts.tol_c, nudges);  // geometric nudges
        profile = shoot(spec, c_star, fine);
        ++nudges;
    }
    if (!acceptable(profile)) {
        throw NonConvergent("overshoot-side endpoint kept undershooting after "
                            "nudging");
    }
    result.c_star = c_star;
    result.profile = std::move(profile);
    result.terminal_residual = std::abs(result.profile.values.back());
    return result;
}

CStarResult solve_cstar(const ProblemSpec& spec, double tol_c, double tol_ode) {
    SolveOptions opts;
    opts.tol_c = tol_c;
    opts.tol_ode = tol_ode;
    return solve_cstar(spec, opts);
}

}  // namespace fkpp
