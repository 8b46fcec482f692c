#include "anisodnl/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "anisodnl/errors.hpp"

namespace anisodnl {

double b_quantity(double u, double v, double m) {
  if (u < 0.0 || v < 0.0) throw DomainError("b_quantity: arguments must be nonnegative");
  if (!(m > 0.0)) throw DomainError("b_quantity: m must be positive");
  if (u == v) return 0.0;
  if (v > 0.0 && std::abs(u - v) <= 0.5 * v) {
    // Near the diagonal the closed form cancels; sum the binomial series of
    // ((1+x)^{m+1} - 1) / (m+1) - x instead.
    const double x = (u - v) / v;
    double term = 0.5 * m * x * x;
    double sum = term;
    for (int n = 2; n < 200 && std::abs(term) > 1e-17 * std::abs(sum); ++n) {
      term *= (m + 1.0 - n) / (n + 1.0) * x;
      sum += term;
    }
    return std::max(std::pow(v, m + 1.0) * sum, 0.0);
  }
  const double value = (std::pow(u, m + 1.0) - std::pow(v, m + 1.0)) / (m + 1.0) - std::pow(v, m) * (u - v);
  return std::max(value, 0.0);
}

double sandwich_ratio(double u, double v, double m) {
  const double e = 0.5 * (m + 1.0);
  const double d = std::pow(v, e) - std::pow(u, e);
  return b_quantity(u, v, m) / (d * d);
}

CalibratedConstant b_sandwich_constant(double m, std::size_t resolution) {
  if (!(m >= 1.0)) throw DomainError("b_sandwich_constant: m must be >= 1");
  if (resolution < 2) throw DomainError("b_sandwich_constant: resolution must be at least 2");
  CalibratedConstant c;
  const double step = 10.0 / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; j < resolution; ++j) {
      if (i == j) continue;
      const double u = step * static_cast<double>(i);
      const double v = step * static_cast<double>(j);
      const double r = sandwich_ratio(u, v, m);
      const double worst = std::max(r, 1.0 / r);
      ++c.evaluated;
      if (worst > c.raw) {
        c.raw = worst;
        c.worst_a = u;
        c.worst_b = v;
      }
    }
  }
  c.value = kCalibrationPadding * c.raw;
  return c;
}

double power_inequality_ratio(double a, double b, double gamma) {
  const double num = std::pow(std::abs(a - b), gamma);
  const double sa = std::copysign(std::pow(std::abs(a), gamma), a);
  const double sb = std::copysign(std::pow(std::abs(b), gamma), b);
  return num / std::abs(sa - sb);
}

CalibratedConstant power_inequality_constant(double gamma, std::size_t resolution) {
  if (!(gamma > 1.0)) throw DomainError("power_inequality_constant: gamma must exceed 1");
  if (resolution < 2) throw DomainError("power_inequality_constant: resolution must be at least 2");
  CalibratedConstant c;
  const double step = 20.0 / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; j < resolution; ++j) {
      if (i == j) continue;
      const double a = -10.0 + step * static_cast<double>(i);
      const double b = -10.0 + step * static_cast<double>(j);
      const double r = power_inequality_ratio(a, b, gamma);
      ++c.evaluated;
      if (r > c.raw) {
        c.raw = r;
        c.worst_a = a;
        c.worst_b = b;
      }
    }
  }
  c.value = kCalibrationPadding * c.raw;
  return c;
}

double trapezoid(double tau1, double tau2, double delta, double t) {
  if (!(tau1 < tau2)) throw DomainError("trapezoid: need tau1 < tau2");
  if (!(delta > 0.0) || !(delta < 0.5 * (tau2 - tau1)))
    throw DomainError("trapezoid: delta must lie in (0, (tau2 - tau1) / 2)");
  if (t < tau1) return 0.0;
  if (t <= tau1 + delta) return (t - tau1) / delta;
  if (t < tau2 - delta) return 1.0;
  if (t <= tau2) return 1.0 - (t - tau2 + delta) / delta;
  return 0.0;
}

double H_delta(double delta, double s) {
  if (!(delta > 0.0)) throw DomainError("H_delta: delta must be positive");
  if (s <= 0.0) return 0.0;
  if (s < delta) return s / delta;
  return 1.0;
}

double G_delta(double delta, double s) {
  if (!(delta > 0.0)) throw DomainError("G_delta: delta must be positive");
  if (s <= 0.0) return 0.0;
  if (s < delta) return s * s / (2.0 * delta);
  return s - 0.5 * delta;
}

FastGeometric fast_geometric_iterate(double C, double b, double delta, double y0, std::size_t n) {
  if (!(C > 0.0) || !(b > 1.0) || !(delta > 0.0))
    throw DomainError("fast_geometric_iterate: need C > 0, b > 1, delta > 0");
  if (y0 < 0.0) throw DomainError("fast_geometric_iterate: Y_0 must be nonnegative");
  FastGeometric out;
  out.threshold = std::pow(C, -1.0 / delta) * std::pow(b, -1.0 / (delta * delta));
  out.sequence.reserve(n + 1);
  out.sequence.push_back(y0);
  double y = y0;
  for (std::size_t j = 0; j < n; ++j) {
    y = C * std::pow(b, static_cast<double>(j)) * std::pow(y, 1.0 + delta);
    out.sequence.push_back(y);
  }
  out.converged = y0 == 0.0 || out.sequence.back() < 1e-12 * y0;
  return out;
}

}  // namespace anisodnl
