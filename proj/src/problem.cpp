#include "fkpp/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <utility>

#include "fkpp/errors.hpp"
#include "fkpp/interpolate.hpp"
#include "fkpp/quadrature.hpp"

namespace fkpp {

namespace {

std::vector<double> chebyshev_grid(int n) {
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = -std::cos(std::numbers::pi * i / (n - 1));
    }
    r.front() = -1.0;
    r.back() = 1.0;
    return r;
}

// Locates the sign change of g on (-1, 1): uniform scan, then bisection.
double locate_s0(const ScalarFn& g, const BuildOptions& opts, double scale) {
    const int n = opts.scan_points;
    const double zero_tol = opts.roundoff_tol * std::max(1.0, scale);

    double prev_r = 0.0;
    int prev_sign = 0;
    int flips_pos_to_neg = 0, flips_neg_to_pos = 0;
    double flip_lo = 0.0, flip_hi = 0.0;
    for (int i = 1; i < n; ++i) {
        const double r = -1.0 + 2.0 * i / n;  // interior points only
        const double v = g(r);
        const int sign = (v > zero_tol) ? 1 : (v < -zero_tol ? -1 : 0);
        if (sign != 0) {
            if (prev_sign == 1 && sign == -1) {
                ++flips_pos_to_neg;
                flip_lo = prev_r;
                flip_hi = r;
            } else if (prev_sign == -1 && sign == 1) {
                ++flips_neg_to_pos;
            }
            prev_sign = sign;
            prev_r = r;
        }
    }
    if (flips_neg_to_pos > 0) {
        throw SignStructureViolation(
            "g changes sign from negative to positive: wrong orientation or "
            "extra interior zeros");
    }
    if (flips_pos_to_neg == 0) {
        throw SignStructureViolation("g has no interior sign change on (-1, 1)");
    }
    if (flips_pos_to_neg > 1) {
        throw SignStructureViolation("g has multiple interior sign changes");
    }

    double lo = flip_lo, hi = flip_hi;
    while (hi - lo > opts.s0_bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

void validate_signs(const ScalarFn& g, double s0, double scale,
                    std::span<const double> grid, const BuildOptions& opts) {
    const double tol = opts.roundoff_tol * std::max(1.0, scale);
    for (double r : grid) {
        if (r <= -1.0 || r >= 1.0) continue;
        const double v = g(r);
        if (r < s0 && v < -tol) {
            throw SignStructureViolation("g(" + std::to_string(r) +
                                         ") < 0 left of s0");
        }
        if (r > s0 && v > tol) {
            throw SignStructureViolation("g(" + std::to_string(r) +
                                         ") > 0 right of s0");
        }
    }
    const double endpoint_tol = 1e-8 * std::max(1.0, scale);
    if (std::abs(g(-1.0)) > endpoint_tol || std::abs(g(1.0)) > endpoint_tol) {
        throw SignStructureViolation("g does not vanish at the endpoints");
    }
}

// Cumulative quadrature of g along the grid; every partial sum must be
// positive up to roundoff.
void validate_potential(const ScalarFn& g, double s0, double scale,
                        std::span<const double> grid, const BuildOptions& opts) {
    QuadratureOptions q{.abs_tol = opts.validation_quad_tol, .max_depth = 40};
    const std::array<double, 1> split{s0};
    const double tol = opts.roundoff_tol * std::max(1.0, scale);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        acc += integrate(g, grid[i], grid[i + 1], q, split);
        const double r = grid[i + 1];
        if (r < 1.0 && acc <= -tol) {
            throw HypothesisGFails("G(" + std::to_string(r) +
                                   ") = " + std::to_string(acc) + " <= 0");
        }
    }
}

struct FitResult {
    double slope, intercept, residual;
    int points;
};

FitResult log_fit(const ScalarFn& g, double endpoint, double side_sign,
                  double window) {
    // side_sign = +1 fits near -1 using g > 0, -1 fits near +1 using -g > 0.
    std::vector<double> xs, ys;
    for (int j = 0; j <= 14; ++j) {
        const double t = window * std::pow(2.0, -j);
        const double r = endpoint + side_sign * t;
        const double v = side_sign > 0 ? g(r) : -g(r);
        if (v <= 1e-300 || !std::isfinite(v)) continue;
        xs.push_back(std::log(t));
        ys.push_back(std::log(v));
    }
    const int n = static_cast<int>(xs.size());
    if (n < 6) return {0.0, 0.0, 1e9, n};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = ys[i] - (slope * xs[i] + intercept);
        ss += e * e;
    }
    return {slope, intercept, std::sqrt(ss / n), n};
}

}  // namespace

ProblemSpec build_problem(double p, ScalarFn diffusion, ScalarFn reaction,
                          const BuildOptions& opts) {
    if (!(p > 1.0)) {
        throw Error("build_problem: p must exceed 1");
    }
    if (!diffusion || !reaction) {
        throw Error("build_problem: diffusion and reaction handles required");
    }

    ProblemSpec spec;
    spec.p = p;
    spec.p_conj = p / (p - 1.0);
    spec.diffusion = std::move(diffusion);
    spec.reaction = std::move(reaction);
    const double inv_pm1 = 1.0 / (p - 1.0);
    spec.g = [d = spec.diffusion, f = spec.reaction, inv_pm1](double r) {
        return std::pow(d(r), inv_pm1) * f(r);
    };

    // d must be bounded away from zero on [-1, 1].
    const auto grid = chebyshev_grid(opts.validation_points);
    double d_min = std::numeric_limits<double>::infinity();
    for (double r : grid) {
        const double dv = spec.diffusion(r);
        if (!(dv > 0.0)) {
            throw NonPositiveDiffusion("d(" + std::to_string(r) +
                                       ") = " + std::to_string(dv));
        }
        d_min = std::min(d_min, dv);
    }
    spec.d_min = d_min;

    double sup_g = 0.0;
    for (double r : grid) sup_g = std::max(sup_g, std::abs(spec.g(r)));
    spec.sup_g = sup_g;

    spec.s0 = locate_s0(spec.g, opts, sup_g);
    validate_signs(spec.g, spec.s0, sup_g, grid, opts);
    if (opts.check_hypothesis_G) {
        validate_potential(spec.g, spec.s0, sup_g, grid, opts);
    }

    if (opts.exponents) {
        spec.exponents = opts.exponents;
    } else if (opts.estimate_exponents) {
        try {
            spec.exponents = estimate_exponents(spec, opts.exponent_window,
                                                opts.exponent_fit_threshold);
        } catch (const PoorFit&) {
            spec.exponents = std::nullopt;
        }
    }
    return spec;
}

double potential_G(const ProblemSpec& spec, double r, double abs_tol) {
    if (r < -1.0 - 1e-12 || r > 1.0 + 1e-12) {
        throw Error("potential_G: r outside [-1, 1]");
    }
    r = std::clamp(r, -1.0, 1.0);
    if (r == -1.0) return 0.0;
    QuadratureOptions q{.abs_tol = abs_tol};
    const std::array<double, 1> split{spec.s0};
    return integrate(spec.g, -1.0, r, q, split);
}

AsymptoticExponents estimate_exponents(const ProblemSpec& spec, double window,
                                       double fit_threshold) {
    const auto minus = log_fit(spec.g, -1.0, +1.0, window);
    const auto plus = log_fit(spec.g, +1.0, -1.0, window);

    AsymptoticExponents e;
    e.source = ExponentSource::Estimated;
    e.gamma_minus = minus.slope;
    e.gamma0_minus = std::exp(minus.intercept);
    e.gamma_plus = plus.slope;
    e.gamma0_plus = std::exp(plus.intercept);
    e.residual_minus = minus.residual;
    e.residual_plus = plus.residual;

    const bool bad = minus.residual > fit_threshold ||
                     plus.residual > fit_threshold || !(e.gamma_minus > 0.0) ||
                     !(e.gamma_plus > 0.0) || !std::isfinite(e.gamma0_minus) ||
                     !std::isfinite(e.gamma0_plus);
    if (bad) {
        throw PoorFit("exponent fit residuals " + std::to_string(minus.residual) +
                      " / " + std::to_string(plus.residual) +
                      " exceed threshold " + std::to_string(fit_threshold));
    }
    return e;
}

ProblemSpec make_cubic_bistable(double s0, double p, BuildOptions opts) {
    if (!(s0 > -1.0 && s0 < 1.0)) {
        throw Error("cubic family: s0 must lie in (-1, 1)");
    }
    if (!opts.exponents) {
        opts.exponents = AsymptoticExponents{
            .gamma_minus = 1.0,
            .gamma0_minus = 2.0 * (1.0 + s0),
            .gamma_plus = 1.0,
            .gamma0_plus = 2.0 * (1.0 - s0),
            .source = ExponentSource::UserSupplied,
        };
    }
    auto spec = build_problem(
        p, [](double) { return 1.0; },
        [s0](double s) { return (s * s - 1.0) * (s - s0); }, opts);
    spec.family = "cubic(s0=" + std::to_string(s0) + ")";
    return spec;
}

ProblemSpec make_double_well(double alpha, double p, BuildOptions opts) {
    if (!(alpha > 1.0)) {
        throw Error("double-well family: alpha must exceed 1");
    }
    if (!opts.exponents) {
        opts.exponents = AsymptoticExponents{
            .gamma_minus = alpha - 1.0,
            .gamma0_minus = std::pow(2.0, alpha - 1.0),
            .gamma_plus = alpha - 1.0,
            .gamma0_plus = std::pow(2.0, alpha - 1.0),
            .source = ExponentSource::UserSupplied,
        };
    }
    auto spec = build_problem(
        p, [](double) { return 1.0; },
        [alpha](double s) {
            const double w = std::abs(s * s - 1.0);
            if (w == 0.0) return 0.0;
            return std::pow(w, alpha - 2.0) * (s * s - 1.0) * s;
        },
        opts);
    spec.family = "double_well(alpha=" + std::to_string(alpha) + ")";
    return spec;
}

ProblemSpec make_alpha_bistable(double alpha, double s0, double p,
                                BuildOptions opts) {
    if (!(alpha > 1.0) || !(s0 > -1.0 && s0 < 1.0)) {
        throw Error("alpha-bistable family: need alpha > 1 and s0 in (-1, 1)");
    }
    if (!opts.exponents) {
        const double coef = std::pow(2.0, alpha - 1.0);
        opts.exponents = AsymptoticExponents{
            .gamma_minus = alpha - 1.0,
            .gamma0_minus = coef * (1.0 + s0),
            .gamma_plus = alpha - 1.0,
            .gamma0_plus = coef * (1.0 - s0),
            .source = ExponentSource::UserSupplied,
        };
    }
    auto spec = build_problem(
        p, [](double) { return 1.0; },
        [alpha, s0](double s) {
            const double w = 1.0 - s * s;
            if (w <= 0.0) return 0.0;
            return -std::pow(w, alpha - 1.0) * (s - s0);
        },
        opts);
    spec.family = "alpha_bistable(alpha=" + std::to_string(alpha) +
                  ",s0=" + std::to_string(s0) + ")";
    return spec;
}

ProblemSpec make_tabulated(std::vector<double> s, std::vector<double> g_values,
                           double p, BuildOptions opts) {
    if (s.size() != g_values.size() || s.size() < 4) {
        throw Error("tabulated family: need matching s,g columns with >= 4 rows");
    }
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (!(s[i] < s[i + 1])) {
            throw Error("tabulated family: abscissae must be strictly increasing");
        }
    }
    if (std::abs(s.front() + 1.0) > 1e-12 || std::abs(s.back() - 1.0) > 1e-12) {
        throw Error("tabulated family: table must cover [-1, 1] inclusively");
    }
    auto xs = std::make_shared<std::vector<double>>(std::move(s));
    auto ys = std::make_shared<std::vector<double>>(std::move(g_values));
    auto ms = std::make_shared<std::vector<double>>(
        pchip_slopes(*xs, *ys, /*linear_ends=*/true));
    ScalarFn table_g = [xs, ys, ms](double r) {
        r = std::clamp(r, xs->front(), xs->back());
        return hermite_eval(r, *xs, *ys, *ms);
    };
    // The table defines g directly; with unit diffusion f coincides with g.
    auto spec = build_problem(p, [](double) { return 1.0; }, table_g, opts);
    spec.family = "tabulated(" + std::to_string(xs->size()) + " rows)";
    return spec;
}

}  // namespace fkpp
