#pragma once

#include <span>
#include <vector>

namespace fkpp {

/// Fritsch-Carlson monotone slopes for piecewise-cubic interpolation of
/// (x, y). The resulting Hermite interpolant preserves monotone runs of the
/// data. `linear_ends` forces the first and last intervals to degenerate to
/// straight lines (no overshoot against endpoint data).
std::vector<double> pchip_slopes(std::span<const double> x,
                                 std::span<const double> y,
                                 bool linear_ends = false);

/// Index i with x[i] <= xq < x[i+1] (clamped to valid interval range).
std::size_t locate_interval(std::span<const double> x, double xq);

/// Piecewise cubic Hermite evaluation on nodes x with values y and slopes m.
double hermite_eval(double xq, std::span<const double> x,
                    std::span<const double> y, std::span<const double> m);

/// Derivative of the piecewise cubic Hermite interpolant.
double hermite_eval_deriv(double xq, std::span<const double> x,
                          std::span<const double> y, std::span<const double> m);

}  // namespace fkpp
