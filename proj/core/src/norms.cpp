#include "anisodnl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anisodnl/errors.hpp"

namespace anisodnl {

void require_compatible(const TimeSeries& a, const TimeSeries& b, const char* where) {
  if (!same_grid(a.grid_ptr(), b.grid_ptr()))
    throw DomainError(std::string(where) + ": series live on different grids");
  if (a.size() != b.size()) throw DomainError(std::string(where) + ": frame counts differ");
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (std::abs(a.time(n) - b.time(n)) > 1e-12 * (1.0 + std::abs(a.time(n))))
      throw DomainError(std::string(where) + ": frame times differ");
  }
}

double spacetime_integral_power(const TimeSeries& series, double q) {
  if (series.empty()) throw DomainError("spacetime_integral_power: empty series");
  if (series.size() == 1) return 0.0;
  const auto w = series.time_weights();
  double total = 0.0;
  for (std::size_t n = 0; n < series.size(); ++n) total += w[n] * integrate_power(series[n], q);
  return total;
}

double spacetime_lp_norm(const TimeSeries& series, double q) {
  return std::pow(spacetime_integral_power(series, q), 1.0 / q);
}

namespace {

// sum_n w_n int |d_j a^{m} - d_j b^{m}|^p over faces; b may be null.
double gradient_difference_power(const TimeSeries& a, const TimeSeries* b, std::size_t axis, double m,
                                 double p) {
  const auto w = a.time_weights();
  double total = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    FaceField da = face_diff_power(a[n], m, axis);
    if (b) {
      const FaceField db = face_diff_power((*b)[n], m, axis);
      for (std::size_t i = 0; i < da.values.size(); ++i) da.values[i] -= db.values[i];
    }
    total += w[n] * integrate_power(da, p);
  }
  return total;
}

}  // namespace

std::vector<double> gradient_power_norms(const TimeSeries& series, const Exponents& exponents) {
  exponents.validate();
  if (exponents.dim() != series.grid().dim())
    throw DomainError("gradient_power_norms: exponent count does not match the grid");
  std::vector<double> out;
  for (std::size_t j = 0; j < exponents.dim(); ++j) {
    const double s = gradient_difference_power(series, nullptr, j, exponents.m[j], exponents.p[j]);
    out.push_back(std::pow(s, 1.0 / exponents.p[j]));
  }
  return out;
}

double vpm_distance(const TimeSeries& u, const TimeSeries& v, const Exponents& exponents) {
  require_compatible(u, v, "vpm_distance");
  exponents.validate();
  if (exponents.dim() != u.grid().dim())
    throw DomainError("vpm_distance: exponent count does not match the grid");
  const double q_star =
      std::max(exponents.m_min() + 1.0, *std::max_element(exponents.m.begin(), exponents.m.end()));

  TimeSeries diff(u.grid_ptr());
  for (std::size_t n = 0; n < u.size(); ++n) {
    std::vector<double> d(u[n].size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = u[n][i] - v[n][i];
    diff.push_back(ScalarField(u.grid_ptr(), std::move(d), u.time(n)));
  }
  double total = spacetime_lp_norm(diff, q_star);
  for (std::size_t j = 0; j < exponents.dim(); ++j) {
    const double s = gradient_difference_power(u, &v, j, exponents.m[j], exponents.p[j]);
    total += std::pow(s, 1.0 / exponents.p[j]);
  }
  return total;
}

double max_positive_part(const TimeSeries& a, const TimeSeries& b) {
  require_compatible(a, b, "max_positive_part");
  double out = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n)
    for (std::size_t i = 0; i < a[n].size(); ++i) out = std::max(out, a[n][i] - b[n][i]);
  return out;
}

}  // namespace anisodnl
