#include "anisodnl/mollifiers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "anisodnl/errors.hpp"

namespace anisodnl {

namespace {

void require_series(const TimeSeries& series, const char* where) {
  if (series.size() < 2) throw DomainError(std::string(where) + ": need at least two frames");
}

double time_slack(const TimeSeries& series) {
  return 1e-12 * (1.0 + std::abs(series.back().time()) + std::abs(series.front().time()));
}

// Index n with t in [t_n, t_{n+1}].
std::size_t locate(const TimeSeries& series, double t) {
  std::size_t lo = 0, hi = series.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (series.time(mid) <= t) lo = mid; else hi = mid;
  }
  return lo;
}

// Adds c0 * frame n + c1 * frame n + 1 to acc.
void accumulate(std::vector<double>& acc, const TimeSeries& s, std::size_t n, double c0, double c1) {
  const auto a = s[n].values();
  const auto b = s[n + 1].values();
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c0 * a[i] + c1 * b[i];
}

// Time-reflected copy: frame times T0 + T1 - t_n in increasing order.
TimeSeries reflect(const TimeSeries& series) {
  const double sum = series.front().time() + series.back().time();
  TimeSeries out(series.grid_ptr());
  for (std::size_t n = series.size(); n-- > 0;) {
    ScalarField f = series[n];
    f.set_time(sum - series.time(n));
    out.push_back(std::move(f));
  }
  return out;
}

// (1/h) int_{s0}^{s1} e^{(s - t)/h} v(s) ds on one interval [t_n, t_{n+1}]
// containing [s0, s1], as weights on the two endpoint frames.
void exp_segment(const TimeSeries& s, std::size_t n, double s0, double s1, double t, double h,
                 std::vector<double>& acc) {
  if (s1 <= s0) return;
  const double tn = s.time(n), dtn = s.dt(n);
  const double e0 = std::exp((s0 - t) / h);
  const double e1 = std::exp((s1 - t) / h);
  // v(s) = A + B (s - s0) with A = v(s0), B = (v_{n+1} - v_n) / dt.
  const double int_exp = e1 - e0;                        // (1/h) int e^{(s-t)/h}
  const double int_lin = (s1 - s0) * e1 - h * (e1 - e0);  // (1/h) int (s - s0) e^{(s-t)/h}
  const double lam = (s0 - tn) / dtn;
  // A = (1 - lam) v_n + lam v_{n+1}; B = (v_{n+1} - v_n) / dt.
  const double c0 = (1.0 - lam) * int_exp - int_lin / dtn;
  const double c1 = lam * int_exp + int_lin / dtn;
  accumulate(acc, s, n, c0, c1);
}

ScalarField exp_forward_at(const TimeSeries& series, double h, double t) {
  std::vector<double> acc(series.grid().size(), 0.0);
  const double t0 = series.front().time();
  for (std::size_t n = 0; n + 1 < series.size() && series.time(n) < t; ++n) {
    const double s0 = std::max(series.time(n), t0);
    const double s1 = std::min(series.time(n + 1), t);
    exp_segment(series, n, s0, s1, t, h, acc);
  }
  return ScalarField(series.grid_ptr(), std::move(acc), t);
}

TimeSeries exp_forward(const TimeSeries& series, double h) {
  TimeSeries out(series.grid_ptr());
  std::vector<double> cur(series.grid().size(), 0.0);
  out.push_back(ScalarField(series.grid_ptr(), cur, series.front().time()));
  for (std::size_t n = 0; n + 1 < series.size(); ++n) {
    const double tau = series.dt(n) / h;
    const double decay = std::exp(-tau);
    // Exact weights of v_n and v_{n+1} over one interval ending at t_{n+1}.
    const double one_minus = -std::expm1(-tau);
    const double beta = (tau - one_minus) / tau;
    const double alpha = one_minus - beta;
    for (double& c : cur) c *= decay;
    accumulate(cur, series, n, alpha, beta);
    out.push_back(ScalarField(series.grid_ptr(), cur, series.time(n + 1)));
  }
  return out;
}

}  // namespace

ScalarField interpolate(const TimeSeries& series, double t) {
  if (series.empty()) throw DomainError("interpolate: empty series");
  const double slack = time_slack(series);
  if (t < series.front().time() - slack || t > series.back().time() + slack)
    throw DomainError("interpolate: time outside the series range");
  if (series.size() == 1) {
    ScalarField f = series.front();
    f.set_time(t);
    return f;
  }
  t = std::clamp(t, series.front().time(), series.back().time());
  const std::size_t n = locate(series, t);
  const double lam = (t - series.time(n)) / series.dt(n);
  std::vector<double> acc(series.grid().size(), 0.0);
  accumulate(acc, series, n, 1.0 - lam, lam);
  return ScalarField(series.grid_ptr(), std::move(acc), t);
}

ScalarField integrate_in_time(const TimeSeries& series, double a, double b) {
  require_series(series, "integrate_in_time");
  const double slack = time_slack(series);
  if (a > b) throw DomainError("integrate_in_time: need a <= b");
  if (a < series.front().time() - slack || b > series.back().time() + slack)
    throw DomainError("integrate_in_time: interval outside the series range");
  a = std::max(a, series.front().time());
  b = std::min(b, series.back().time());
  std::vector<double> acc(series.grid().size(), 0.0);
  for (std::size_t n = 0; n + 1 < series.size(); ++n) {
    const double s0 = std::max(a, series.time(n));
    const double s1 = std::min(b, series.time(n + 1));
    if (s1 <= s0) continue;
    const double dtn = series.dt(n);
    const double l0 = (s0 - series.time(n)) / dtn;
    const double l1 = (s1 - series.time(n)) / dtn;
    // Trapezoid on a linear segment is exact.
    const double half = 0.5 * (s1 - s0);
    accumulate(acc, series, n, half * ((1.0 - l0) + (1.0 - l1)), half * (l0 + l1));
  }
  return ScalarField(series.grid_ptr(), std::move(acc), a);
}

ScalarField steklov_at(const TimeSeries& series, double h, double t, bool reversed) {
  require_series(series, "steklov_at");
  if (!(h > 0.0)) throw DomainError("steklov_at: h must be positive");
  const double a = reversed ? t - h : t;
  ScalarField out = integrate_in_time(series, a, a + h);
  for (double& v : out.values()) v /= h;
  out.set_time(t);
  return out;
}

TimeSeries steklov(const TimeSeries& series, double h, bool reversed) {
  require_series(series, "steklov");
  if (!(h > 0.0)) throw DomainError("steklov: h must be positive");
  const double slack = time_slack(series);
  const double t0 = series.front().time(), t1 = series.back().time();
  if (h > t1 - t0 + slack) throw DomainError("steklov: h exceeds the time horizon");
  TimeSeries out(series.grid_ptr());
  for (std::size_t n = 0; n < series.size(); ++n) {
    const double t = series.time(n);
    const bool fits = reversed ? t - h >= t0 - slack : t + h <= t1 + slack;
    if (fits) out.push_back(steklov_at(series, h, t, reversed));
  }
  return out;
}

ScalarField exp_mollify_at(const TimeSeries& series, double h, double t, bool reversed) {
  require_series(series, "exp_mollify_at");
  if (!(h > 0.0)) throw DomainError("exp_mollify_at: h must be positive");
  const double slack = time_slack(series);
  const double t0 = series.front().time(), t1 = series.back().time();
  if (t < t0 - slack || t > t1 + slack) throw DomainError("exp_mollify_at: time outside the series range");
  if (!reversed) return exp_forward_at(series, h, t);
  ScalarField out = exp_forward_at(reflect(series), h, t0 + t1 - t);
  out.set_time(t);
  return out;
}

TimeSeries exp_mollify(const TimeSeries& series, double h, bool reversed) {
  require_series(series, "exp_mollify");
  if (!(h > 0.0)) throw DomainError("exp_mollify: h must be positive");
  if (!reversed) return exp_forward(series, h);
  return reflect(exp_forward(reflect(series), h));
}

}  // namespace anisodnl
