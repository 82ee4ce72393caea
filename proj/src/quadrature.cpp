#include "fkpp/quadrature.hpp"
#include "fkpp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fkpp {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss-7 weights matching nodes 1, 3, 5, 7 above.
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& fn, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);

    const double f_mid = fn(mid);
    double kronrod = kKronrodWeights[7] * f_mid;
    double gauss = kGaussWeights[3] * f_mid;

    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = fn(mid - dx) + fn(mid + dx);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

double integrate_segment(const std::function<double(double)>& fn, double lo,
                         double hi, double tol, int max_depth) {
    struct Panel {
        double lo, hi, tol;
        int depth;
    };
    std::vector<Panel> stack{{lo, hi, tol, 0}};
    double total = 0.0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const auto [value, error] = gk15(fn, p.lo, p.hi);
        if (error <= p.tol || p.hi - p.lo < 16 * std::numeric_limits<double>::epsilon() * (std::abs(p.lo) + std::abs(p.hi))) {
            total += value;
            continue;
        }
        if (p.depth >= max_depth) {
            throw QuadratureFailure("adaptive quadrature: tolerance " +
                                    std::to_string(p.tol) +
                                    " not met within subdivision budget");
        }
        const double mid = 0.5 * (p.lo + p.hi);
        stack.push_back({p.lo, mid, 0.5 * p.tol, p.depth + 1});
        stack.push_back({mid, p.hi, 0.5 * p.tol, p.depth + 1});
    }
    return total;
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b,
                 const QuadratureOptions& opts, std::span<const double> breakpoints) {
    if (a == b) return 0.0;
    const double sign = (a < b) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);

    std::vector<double> cuts{lo};
    for (double s : breakpoints) {
        if (s > lo && s < hi) cuts.push_back(s);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    const int nseg = static_cast<int>(cuts.size()) - 1;
    double total = 0.0;
    for (int i = 0; i < nseg; ++i) {
        total += integrate_segment(fn, cuts[i], cuts[i + 1], opts.abs_tol / nseg,
                                   opts.max_depth);
    }
    return sign * total;
}

}  // namespace fkpp
