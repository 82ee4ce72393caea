#pragma once

#include <functional>
#include <span>

namespace fkpp {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 52;  // panel bisection depth before giving up
};

/// Adaptive Gauss-Kronrod (7,15) integration of fn over [a, b].
///
/// `breakpoints` are interior abscissae where the integrand may be
/// non-smooth; panels are split there a priori. Throws QuadratureFailure
/// if the tolerance cannot be met within the subdivision budget.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 const QuadratureOptions& opts = {},
                 std::span<const double> breakpoints = {});

}  // namespace fkpp
