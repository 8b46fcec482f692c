#pragma once

#include <cstddef>
#include <vector>

namespace anisodnl {

/// b[u, v] = (u^{m+1} - v^{m+1}) / (m + 1) - v^m (u - v) for u, v >= 0.
double b_quantity(double u, double v, double m);

/// b[u, v] / |v^{(m+1)/2} - u^{(m+1)/2}|^2, for u != v.
double sandwich_ratio(double u, double v, double m);

/// Result of a dense-sweep calibration.
struct CalibratedConstant {
  double value = 0.0;  ///< raw supremum padded by 10 %
  double raw = 0.0;    ///< supremum over the sweep
  double worst_a = 0.0;
  double worst_b = 0.0;
  std::size_t evaluated = 0;
};

inline constexpr double kCalibrationPadding = 1.1;

/// Sandwich constant for b: the supremum of max(ratio, 1/ratio) over a
/// `resolution` x `resolution` grid of [0, 10]^2 with u != v.
CalibratedConstant b_sandwich_constant(double m, std::size_t resolution = 401);

/// Constant c(gamma) with |a - b|^gamma <= c ||a|^{gamma-1} a - |b|^{gamma-1} b|,
/// swept over [-10, 10]^2.
CalibratedConstant power_inequality_constant(double gamma, std::size_t resolution = 401);

/// |a - b|^gamma / ||a|^{gamma-1} a - |b|^{gamma-1} b|, for a != b.
double power_inequality_ratio(double a, double b, double gamma);

/// Trapezoidal cutoff: 0 before tau1, ramps up on [tau1, tau1 + delta], 1 in
/// between, ramps down on [tau2 - delta, tau2], 0 after tau2.
double trapezoid(double tau1, double tau2, double delta, double t);

/// H_delta(s): 0 for s <= 0, s / delta on (0, delta), 1 beyond.
double H_delta(double delta, double s);

/// G_delta(s) = int_0^s H_delta.
double G_delta(double delta, double s);

struct FastGeometric {
  std::vector<double> sequence;  ///< Y_0 ... Y_n
  bool converged = false;        ///< Y_n < 1e-12 Y_0 (or Y_0 == 0)
  double threshold = 0.0;        ///< C^{-1/delta} b^{-1/delta^2}
};

/// Iterates Y_{j+1} = C b^j Y_j^{1+delta} with equality.
FastGeometric fast_geometric_iterate(double C, double b, double delta, double y0, std::size_t n);

}  // namespace anisodnl
