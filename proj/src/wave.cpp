#include "fkpp/wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fkpp/errors.hpp"
#include "fkpp/interpolate.hpp"
#include "fkpp/quadrature.hpp"

namespace fkpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Finiteness side_rule(double gamma, double p) {
    const double threshold = p - 1.0;
    if (p <= 2.0) {
        return gamma < threshold ? Finiteness::Finite : Finiteness::Infinite;
    }
    return gamma >= threshold ? Finiteness::Infinite : Finiteness::Undetermined;
}

/// Local decay exponent of y at an endpoint: the g-balance gives 1 + gamma
/// when gamma <= 1/(p-1) (and always when c = 0); otherwise the c-term sets
/// the decay, which differs between the two endpoints.
double tail_exponent(double gamma, double p, double c, bool left_endpoint) {
    if (c == 0.0 || gamma <= 1.0 / (p - 1.0) + 1e-12) return 1.0 + gamma;
    return left_endpoint ? gamma * p : p / (p - 1.0);
}

}  // namespace

InterfaceClass classify_interfaces(const AsymptoticExponents& exponents,
                                   double p) {
    InterfaceClass cls;
    cls.left_criterion = {exponents.gamma_plus, p - 1.0};
    cls.right_criterion = {exponents.gamma_minus, p - 1.0};
    cls.left = side_rule(exponents.gamma_plus, p);
    cls.right = side_rule(exponents.gamma_minus, p);
    return cls;
}

WaveProfile reconstruct(const ProblemSpec& spec, const CStarResult& result,
                        double x0, int n, const ReconstructOptions& opts) {
    if (n < 16) {
        throw Error("reconstruct: need at least 16 samples");
    }
    const Trajectory& y = result.profile;
    if (y.nodes.size() < 4) {
        throw ProfileNotPositive("reconstruct: phase profile has too few nodes");
    }
    for (std::size_t i = 1; i + 1 < y.nodes.size(); ++i) {
        if (y.nodes[i] > -0.999 && y.nodes[i] < 0.999 && y.values[i] <= 0.0) {
            throw ProfileNotPositive("phase profile is not positive at r = " +
                                     std::to_string(y.nodes[i]));
        }
    }

    WaveProfile prof;
    prof.x0 = x0;
    prof.c_star = result.c_star;
    prof.problem = std::make_shared<ProblemSpec>(spec);
    prof.phase = std::make_shared<Trajectory>(result.profile);

    const double p = spec.p;
    const double inv_pm1 = 1.0 / (p - 1.0);
    auto integrand = [&](double r) {
        const double yr = std::max(y(r), 1e-300);
        return std::pow(spec.diffusion(r), inv_pm1) * std::pow(yr, -1.0 / p);
    };

    // Classification and tail models need the decay exponents; without them
    // both sides stay Undetermined and the tails fall back to a local fit.
    AsymptoticExponents expo;
    bool have_exponents = false;
    if (spec.exponents) {
        expo = *spec.exponents;
        have_exponents = true;
        prof.iface = classify_interfaces(expo, p);
    } else {
        prof.iface = InterfaceClass{};
        prof.iface.left_criterion = {std::numeric_limits<double>::quiet_NaN(), p - 1.0};
        prof.iface.right_criterion = {std::numeric_limits<double>::quiet_NaN(), p - 1.0};
    }

    // Stitch distances: the right side always reaches the data (shots start
    // at -1); the left side widens when the trajectory was truncated by a
    // zero graze just before r = 1.
    const double delta_right = opts.edge_offset;
    const double delta_left =
        std::max(opts.edge_offset, 2.0 * (1.0 - y.nodes.back()));
    auto make_tail = [&](bool left_endpoint) {
        WaveProfile::TailModel tail;
        const double delta = left_endpoint ? delta_left : delta_right;
        tail.delta = delta;
        const double endpoint = left_endpoint ? 1.0 : -1.0;
        const double r_edge = left_endpoint ? 1.0 - delta : -1.0 + delta;
        double e;
        if (have_exponents) {
            const double gamma = left_endpoint ? expo.gamma_plus : expo.gamma_minus;
            e = tail_exponent(gamma, p, result.c_star, left_endpoint);
        } else {
            // Local two-point fit of the decay exponent from the trajectory.
            const double t1 = delta, t2 = 4.0 * delta;
            const double y1 = std::max(y(endpoint - std::copysign(t1, endpoint)), 1e-300);
            const double y2 = std::max(y(endpoint - std::copysign(t2, endpoint)), 1e-300);
            e = std::log(y2 / y1) / std::log(t2 / t1);
        }
        const double y_edge = std::max(y(r_edge), 1e-300);
        tail.exponent = e;
        tail.kappa = y_edge / std::pow(delta, e);
        tail.integrand_coef = std::pow(spec.diffusion(endpoint), inv_pm1) *
                              std::pow(tail.kappa, -1.0 / p);
        tail.singularity = e / p;
        tail.valid = true;
        return tail;
    };
    prof.tail_left = make_tail(true);
    prof.tail_right = make_tail(false);

    // U samples clustered toward the endpoints; one node pinned at U = 0.
    int m = std::max(n, 64);
    if (m % 2 == 0) ++m;
    const double u_hi = 1.0 - delta_left;
    const double u_lo = -1.0 + delta_right;
    std::vector<double> us(m);
    for (int k = 0; k < m; ++k) {
        const double theta = std::cos(std::numbers::pi * k / (m - 1));
        us[k] = 0.5 * (u_lo + u_hi) + 0.5 * (u_hi - u_lo) * theta;
    }
    int mid = 0;
    for (int k = 1; k < m; ++k) {
        if (std::abs(us[k]) < std::abs(us[mid])) mid = k;
    }
    us[mid] = 0.0;

    // Panel integrals between consecutive samples, then cumulative x values
    // anchored at x(0) = x0.
    QuadratureOptions q{.abs_tol = opts.tol_quad / m, .max_depth = 48};
    std::vector<double> panel(m - 1);
    for (int k = 0; k + 1 < m; ++k) {
        panel[k] = integrate(integrand, us[k + 1], us[k], q,
                             std::array<double, 1>{spec.s0});
    }
    std::vector<double> x(m);
    x[mid] = x0;
    for (int k = mid - 1; k >= 0; --k) x[k] = x[k + 1] - panel[k];
    for (int k = mid + 1; k < m; ++k) x[k] = x[k - 1] + panel[k - 1];

    prof.tail_left.x_edge = x.front();
    prof.tail_right.x_edge = x.back();

    // Analytic endpoint tails: integrand ~ coef * t^(-s) with s = e/p.
    auto tail_length = [&](const WaveProfile::TailModel& t) {
        if (t.singularity >= 1.0) return kInf;
        return t.integrand_coef * std::pow(t.delta, 1.0 - t.singularity) /
               (1.0 - t.singularity);
    };
    auto tail_error = [&](const WaveProfile::TailModel& t, double len,
                          bool left_endpoint) {
        if (!std::isfinite(len)) return 0.0;
        const double endpoint = left_endpoint ? 1.0 : -1.0;
        const double r_edge = endpoint - std::copysign(t.delta, endpoint);
        const double d_drift =
            std::abs(std::pow(spec.diffusion(endpoint), inv_pm1) -
                     std::pow(spec.diffusion(r_edge), inv_pm1)) /
            std::pow(spec.diffusion(endpoint), inv_pm1);
        return len * (0.5 * t.exponent * t.delta + d_drift);
    };

    const double tail_len_left = tail_length(prof.tail_left);
    const double tail_len_right = tail_length(prof.tail_right);

    if (prof.iface.left == Finiteness::Finite && !std::isfinite(tail_len_left)) {
        throw SingularQuadratureFailure(
            "left interface classified finite but the endpoint integral "
            "diverges");
    }
    if (prof.iface.right == Finiteness::Finite && !std::isfinite(tail_len_right)) {
        throw SingularQuadratureFailure(
            "right interface classified finite but the endpoint integral "
            "diverges");
    }

    if (prof.iface.left == Finiteness::Infinite) {
        prof.x1 = -kInf;
    } else {
        prof.x1 = std::isfinite(tail_len_left) ? x.front() - tail_len_left : -kInf;
        prof.x1_err = tail_error(prof.tail_left, tail_len_left, true);
    }
    if (prof.iface.right == Finiteness::Infinite) {
        prof.x_minus1 = kInf;
    } else {
        prof.x_minus1 =
            std::isfinite(tail_len_right) ? x.back() + tail_len_right : kInf;
        prof.x_minus1_err = tail_error(prof.tail_right, tail_len_right, false);
    }

    // Invert x(U) onto a uniform xi grid by monotone interpolation. x is
    // strictly increasing along k while U decreases.
    const auto slopes = pchip_slopes(x, us);
    prof.xi.resize(n);
    prof.u.resize(n);
    prof.du.resize(n);
    const double lo = x.front(), hi = x.back();
    for (int j = 0; j < n; ++j) {
        const double xi_j = lo + (hi - lo) * j / (n - 1);
        double u_j = hermite_eval(xi_j, x, us, slopes);
        u_j = std::clamp(u_j, u_lo, u_hi);
        prof.xi[j] = xi_j;
        prof.u[j] = u_j;
        const double y_j = std::max(y(u_j), 0.0);
        prof.du[j] = -std::pow(y_j, 1.0 / p) /
                     std::pow(spec.diffusion(u_j), inv_pm1);
    }
    return prof;
}

namespace {

// Inverse of the tail quadrature: distance to the endpoint as a function of
// the wave-coordinate distance dx past the stitch point.
double tail_distance(const WaveProfile::TailModel& t, double dx) {
    const double s = t.singularity;
    const double A = t.integrand_coef;
    if (std::abs(s - 1.0) < 1e-12) {
        return t.delta * std::exp(-dx / A);
    }
    const double base = std::pow(t.delta, 1.0 - s) - (1.0 - s) * dx / A;
    if (s < 1.0) {
        if (base <= 0.0) return 0.0;
        return std::pow(base, 1.0 / (1.0 - s));
    }
    return std::pow(base, 1.0 / (1.0 - s));  // base > delta^(1-s) > 0 here
}

}  // namespace

std::pair<double, double> evaluate(const WaveProfile& profile, double xi) {
    const auto& spec = *profile.problem;
    const double p = spec.p;
    const double inv_pm1 = 1.0 / (p - 1.0);

    auto du_at = [&](double u, double y_val) {
        return -std::pow(std::max(y_val, 0.0), 1.0 / p) /
               std::pow(spec.diffusion(u), inv_pm1);
    };

    if (xi < profile.xi.front()) {
        if (std::isfinite(profile.x1) && xi <= profile.x1) return {1.0, 0.0};
        const auto& t = profile.tail_left;
        const double dist = tail_distance(t, profile.xi.front() - xi);
        const double u = 1.0 - dist;
        const double y_val = t.kappa * std::pow(dist, t.exponent);
        return {u, du_at(u, y_val)};
    }
    if (xi > profile.xi.back()) {
        if (std::isfinite(profile.x_minus1) && xi >= profile.x_minus1)
            return {-1.0, 0.0};
        const auto& t = profile.tail_right;
        const double dist = tail_distance(t, xi - profile.xi.back());
        const double u = -1.0 + dist;
        const double y_val = t.kappa * std::pow(dist, t.exponent);
        return {u, du_at(u, y_val)};
    }

    const double u =
        std::clamp(hermite_eval(xi, profile.xi, profile.u, profile.du), -1.0, 1.0);
    const double y_val = (*profile.phase)(u);
    return {u, du_at(u, y_val)};
}

}  // namespace fkpp
