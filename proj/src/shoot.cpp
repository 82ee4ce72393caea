#include "fkpp/shoot.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fkpp/errors.hpp"
#include "fkpp/interpolate.hpp"

namespace fkpp {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

struct StepResult {
    double y_new;
    double err;
    double k_new;  // RHS at the new point (FSAL)
};

template <typename Rhs>
StepResult dopri_step(const Rhs& f, double r, double y, double k1, double h) {
    const double k2 = f(r + c2 * h, y + h * a21 * k1);
    const double k3 = f(r + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const double k4 = f(r + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 =
        f(r + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 =
        f(r + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y_new =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = f(r + h, y_new);
    const double err = std::abs(
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    return {y_new, err, k7};
}

// Root of the cubic Hermite through (r0,y0,d0)-(r1,y1,d1) inside (r0, r1],
// assuming y0 > 0 >= y1; plain bisection on the dense output.
double hermite_crossing(double r0, double y0, double d0, double r1, double y1,
                        double d1, double tol) {
    const std::array<double, 2> xs{r0, r1};
    const std::array<double, 2> ys{y0, y1};
    const std::array<double, 2> ms{d0, d1};
    double lo = r0, hi = r1;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double v = hermite_eval(mid, xs, ys, ms);
        (v > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Trajectory shoot_impl(const ProblemSpec& spec, double c,
                      const ShootOptions& opts, int retries_left) {
    const double p = spec.p;
    const double pc = spec.p_conj;
    auto rhs = [&](double r, double y) {
        const double yp = y > 0.0 ? y : 0.0;
        return pc * (c * std::pow(yp, 1.0 / p) + spec.g(r));
    };

    Trajectory traj;
    traj.c = c;
    traj.tol = opts.rtol;

    // Startup seed at -1 + offset. The initial point itself is degenerate:
    // (y+)^(1/p) is not Lipschitz at y = 0, so the first step is taken from
    // the local asymptotic balance instead of the integrator.
    const double g_quad_tol = std::max(1e-18, 1e-4 * opts.atol);
    const bool c_balance =
        c < 0.0 && spec.exponents &&
        spec.exponents->gamma_minus > 1.0 / (p - 1.0) + 1e-12;
    auto seed_at = [&](double offset) {
        if (c_balance) {
            // c y^(1/p) + g ~ 0 dominates the startup for fast g decay.
            return std::pow(spec.exponents->gamma0_minus / std::abs(c), p) *
                   std::pow(offset, spec.exponents->gamma_minus * p);
        }
        if (spec.exponents) {
            // y ~ A (1+r)^(1+gamma) with the coefficient balancing both
            // terms: A (1+gamma) = p' (c A^(1/p) + gamma0). The speed term
            // matters at the regime boundary gamma = 1/(p-1).
            const double gamma = spec.exponents->gamma_minus;
            const double gamma0 = spec.exponents->gamma0_minus;
            auto h = [&](double A) {
                return A * (1.0 + gamma) -
                       pc * (c * std::pow(A, 1.0 / p) + gamma0);
            };
            double hi = pc * gamma0 / (1.0 + gamma);
            while (h(hi) < 0.0) hi *= 2.0;
            double lo = 0.0;
            for (int i = 0; i < 80; ++i) {
                const double mid = 0.5 * (lo + hi);
                (h(mid) < 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi) * std::pow(offset, 1.0 + gamma);
        }
        return pc * potential_G(spec, -1.0 + offset, g_quad_tol);
    };

    // Grow the offset until the seed clears the noise floor: below the
    // absolute tolerance the state cannot be kept positive.
    double eps = opts.startup_offset;
    double seed = seed_at(eps);
    while (seed < 50.0 * opts.atol && eps < 1e-3) {
        eps = std::min(2.0 * eps, 1e-3);
        seed = seed_at(eps);
    }
    const double r_start = -1.0 + eps;
    if (spec.g(-1.0 + 0.5 * eps) <= 0.0) {
        throw NonPositiveStart("g <= 0 just right of -1; no lift-off possible");
    }
    if (!(seed > 0.0) || !std::isfinite(seed)) {
        throw NonPositiveStart("asymptotic seed is not positive at -1 + " +
                               std::to_string(eps));
    }

    traj.nodes = {-1.0, r_start};
    traj.values = {0.0, seed};
    traj.derivs = {rhs(-1.0, 0.0), rhs(r_start, seed)};

    double r = r_start;
    double y = seed;
    double k1 = traj.derivs.back();
    double h = std::min(opts.h_max, 1e-4);
    bool crossed = false;

    // Steps shrink geometrically toward the endpoints so the Hermite dense
    // output stays accurate relative to the local power-law decay of y.
    auto endpoint_cap = [](double r_now) {
        return std::max(0.08 * std::min(1.0 + r_now, 1.0 - r_now), 2e-6);
    };

    while (r < 1.0) {
        h = std::min({h, endpoint_cap(r), 1.0 - r});
        const auto step = dopri_step(rhs, r, y, k1, h);
        double tol_step =
            opts.atol + opts.rtol * std::max(std::abs(y), std::abs(step.y_new));
        if (y > 0.0 && step.y_new <= 0.0) {
            // The right-hand side has a kink at y = 0; a step that crosses it
            // cannot meet an arbitrarily small bound. The crossing itself is
            // re-localized on dense output afterwards.
            tol_step = std::max(tol_step, 1e-14);
        }
        if (step.err <= tol_step) {
            double r_new = r + h;
            if (1.0 - r_new < 1e-13) r_new = 1.0;
            if (!crossed && y > 0.0 && step.y_new <= 0.0) {
                const double r_cross =
                    hermite_crossing(r, y, k1, r_new, step.y_new, step.k_new, 1e-10);
                // Near s0 the quasi-equilibrium (g/|c|)^p sinks below the
                // absolute tolerance, so a crossing located inside that band
                // is the legitimate one at s0, not an integration failure.
                const double g_slope = std::max(
                    std::abs(spec.g(spec.s0 + 1e-4) - spec.g(spec.s0 - 1e-4)) /
                        2e-4,
                    1e-3);
                const double band =
                    std::max(1e-8, 8.0 * std::pow(opts.atol, 1.0 / p) *
                                       (1.0 + std::abs(c)) / g_slope);
                if (r_cross < spec.s0 - band) {
                    // A wide step straddling the crossing localizes it
                    // poorly; resolve the crossing region first.
                    if (h > 1e-6) {
                        h *= 0.25;
                        continue;
                    }
                    if (retries_left > 0) {
                        ShootOptions tighter = opts;
                        tighter.rtol = opts.rtol * 0.1;
                        tighter.atol = opts.atol * 0.1;
                        return shoot_impl(spec, c, tighter, retries_left - 1);
                    }
                    throw PrematureCrossing(
                        "zero crossing at r = " + std::to_string(r_cross) +
                        " before s0 = " + std::to_string(spec.s0) +
                        " persisted at tightened tolerance");
                }
                crossed = true;
                traj.outcome = {ShotOutcome::Kind::Undershoot, r_cross, 0.0};
                if (r_cross > r && r_cross < r_new) {
                    traj.nodes.push_back(r_cross);
                    traj.values.push_back(0.0);
                    traj.derivs.push_back(rhs(r_cross, 0.0));
                }
                if (opts.stop_at_crossing) return traj;
            }
            r = r_new;
            y = step.y_new;
            k1 = step.k_new;
            traj.nodes.push_back(r);
            traj.values.push_back(y);
            traj.derivs.push_back(k1);
        }
        const double scale =
            std::pow(tol_step / std::max(step.err, 1e-300), 0.2);
        h *= std::clamp(0.9 * scale, 0.2, 5.0);
        h = std::min(h, opts.h_max);
        if (h < opts.h_min && r < 1.0) {
            throw StepSizeCollapse("step size " + std::to_string(h) +
                                   " fell below h_min at r = " + std::to_string(r));
        }
    }

    if (!crossed) {
        // Terminal-region accuracy is set by the absolute tolerance plus the
        // (contracted) relative error, not by the global solution scale.
        const double conv_tol = 1e3 * opts.atol + 10.0 * opts.rtol;
        if (std::abs(y) <= conv_tol) {
            traj.outcome = {ShotOutcome::Kind::Converged,
                            std::numeric_limits<double>::quiet_NaN(), y};
        } else {
            traj.outcome = {ShotOutcome::Kind::Overshoot,
                            std::numeric_limits<double>::quiet_NaN(), y};
        }
    } else {
        traj.outcome.y1 = y;  // kept for diagnostics when integration continued
    }
    return traj;
}

}  // namespace

bool outcome_leq(const ShotOutcome& a, const ShotOutcome& b, double slack) {
    auto rank = [](const ShotOutcome& o) {
        switch (o.kind) {
            case ShotOutcome::Kind::Undershoot: return 0;
            case ShotOutcome::Kind::Converged: return 1;
            case ShotOutcome::Kind::Overshoot: return 2;
        }
        return 0;
    };
    const int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    if (a.kind == ShotOutcome::Kind::Undershoot) return a.r0 <= b.r0 + slack;
    if (a.kind == ShotOutcome::Kind::Overshoot) return a.y1 <= b.y1 + slack;
    return true;
}

double Trajectory::operator()(double r) const {
    return hermite_eval(r, nodes, values, derivs);
}

double Trajectory::deriv(double r) const {
    return hermite_eval_deriv(r, nodes, values, derivs);
}

Trajectory shoot(const ProblemSpec& spec, double c, const ShootOptions& opts) {
    if (c > 0.0) {
        throw Error("shoot: c must be <= 0 (no boundary-value solution exists "
                    "for positive speeds)");
    }
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) {
        throw Error("shoot: tolerances must be positive");
    }
    return shoot_impl(spec, c, opts, opts.tighten_retries);
}

Trajectory shoot(const ProblemSpec& spec, double c, double tol) {
    ShootOptions opts;
    opts.rtol = tol;
    opts.atol = 1e-2 * tol;
    return shoot(spec, c, opts);
}

ShotOutcome terminal_value(const ProblemSpec& spec, double c, double tol) {
    return shoot(spec, c, tol).outcome;
}

}  // namespace fkpp
