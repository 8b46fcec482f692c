#include "anisodnl/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anisodnl/algebra.hpp"
#include "anisodnl/errors.hpp"

namespace anisodnl {

DataNorms measure_data(const ProblemSpec& spec, const GridPtr& grid, std::size_t time_steps) {
  if (time_steps == 0) throw DomainError("measure_data: need at least one time step");
  if (grid->dim() != spec.dim()) throw DomainError("measure_data: grid dimension mismatch");
  const BarExponents bar = compute_bar_exponents(spec.exponents);
  DataNorms d;
  const ScalarField u0 = sample(grid, spec.u0);
  d.u0_sup = u0.sup_norm();
  const double dt = spec.T / static_cast<double>(time_steps);
  for (std::size_t n = 0; n <= time_steps; ++n) {
    const double t = dt * static_cast<double>(n);
    const double wt = (n == 0 || n == time_steps) ? 0.5 * dt : dt;
    const ScalarField g = sample(grid, spec.g, t);
    for (std::size_t i = 0; i < grid->size(); ++i)
      if (grid->is_boundary(i)) d.g_sup = std::max(d.g_sup, std::abs(g[i]));
    const ScalarField f = sample(grid, spec.f, t);
    d.f_pbar_conj += wt * integrate_power(f, bar.p_bar_conj);
    d.f_sigma += wt * integrate_power(f, spec.sigma * bar.p_bar_conj);
  }
  d.m_star = std::max(d.u0_sup, d.g_sup) + 1.0;
  d.cylinder = spec.volume() * spec.T;
  return d;
}

DataNorms measure_data(const ProblemSpec& spec) {
  const std::size_t n = spec.dim() <= 2 ? 33 : 17;
  return measure_data(spec, make_grid(std::vector<std::size_t>(spec.dim(), n), spec.box), 32);
}

double harmonic_mean(const std::vector<double>& v) {
  if (v.empty()) throw DomainError("harmonic_mean: empty vector");
  double s = 0.0;
  for (double x : v) {
    if (!(x > 0.0)) throw DomainError("harmonic_mean: entries must be positive");
    s += 1.0 / x;
  }
  return static_cast<double>(v.size()) / s;
}

std::vector<double> select_q(const Exponents& exponents) {
  exponents.validate();
  std::vector<double> q = exponents.p;
  const double N = static_cast<double>(exponents.dim());
  const double p_bar = harmonic_mean(q);
  if (p_bar <= N) return q;
  double rest = 0.0;
  for (std::size_t j = 1; j < q.size(); ++j) rest += 1.0 / q[j];
  // N / q_bar = 1/q_1 + sum_{j>1} 1/p_j, with q_bar lowered geometrically.
  double target = 0.99 * std::min(p_bar, N);
  for (int iter = 0; iter < 200; ++iter, target *= 0.99) {
    const double inv_q1 = N / target - rest;
    if (!(inv_q1 > 0.0)) continue;
    const double q1 = 1.0 / inv_q1;
    if (q1 <= 1.0) break;
    if (q1 <= q[0]) {
      q[0] = q1;
      return q;
    }
  }
  throw DomainError("select_q: no auxiliary exponent vector with 1 < q_1 <= p_1 and q_bar < N");
}

double degiorgi_delta(std::size_t N, double q_bar, double mu, double sigma, double p_bar) {
  const double n = static_cast<double>(N);
  return n * q_bar / (n + mu) * (1.0 / n - (1.0 / sigma) * (1.0 / n + 1.0 / p_bar));
}

DeGiorgiReport degiorgi_constants(const ProblemSpec& spec, const BarExponents& bar, double c_struct,
                                  const DataNorms& data) {
  if (!(c_struct > 0.0)) throw DomainError("degiorgi_constants: structural constant must be positive");
  const std::size_t N = spec.dim();
  const double n = static_cast<double>(N);
  const double sigma_min = 1.0 + n / bar.p_bar;
  if (!(spec.sigma > sigma_min))
    throw DomainError("degiorgi_constants: sigma must exceed 1 + N / p_bar");

  DeGiorgiReport r;
  r.c_struct = c_struct;
  r.m = spec.exponents.m_min();
  r.mu = bar.mu;
  r.p_bar = bar.p_bar;
  r.q = select_q(spec.exponents);
  r.q_bar = harmonic_mean(r.q);
  r.delta = degiorgi_delta(N, r.q_bar, r.mu, spec.sigma, bar.p_bar);
  if (!(r.delta > 0.0)) throw DomainError("degiorgi_constants: delta is not positive");
  r.Q = r.q_bar / (spec.sigma * (n + r.mu)) * (1.0 + n / bar.p_bar);
  const double mq = r.m * r.q_bar;
  r.b = std::pow(2.0, 2.0 * mq * (1.0 + r.delta) / (r.m + 1.0));
  r.data = data;
  r.K = c_struct * std::pow(data.f_sigma, r.Q);
  r.K0 = c_struct * std::pow(data.f_pbar_conj, 1.0 / bar.p_bar) +
         c_struct * std::pow(data.m_star, r.m) * std::pow(data.cylinder, 1.0 / bar.p_bar);
  const double candidate =
      c_struct * std::pow(std::pow(r.K0, r.q_bar * r.delta) * r.K, 1.0 / (mq * (1.0 + r.delta)));
  r.M = std::max(data.m_star, candidate);
  r.L = std::pow(2.0, 2.0 / (r.m + 1.0)) * r.M;
  return r;
}

DeGiorgiReport degiorgi_constants(const ProblemSpec& spec, const BarExponents& bar, double c_struct) {
  return degiorgi_constants(spec, bar, c_struct, measure_data(spec));
}

std::vector<double> level_sequence(double M, double m, std::size_t j_max) {
  std::vector<double> out;
  for (std::size_t j = 0; j <= j_max; ++j)
    out.push_back(M * std::pow(2.0 - std::pow(2.0, -static_cast<double>(j)), 2.0 / (m + 1.0)));
  return out;
}

LevelMeasurements measure_levels(const TimeSeries& series, double M, double m, double q_bar,
                                 std::size_t j_max) {
  if (series.size() < 2) throw DomainError("measure_levels: need at least two frames");
  if (!(M > 0.0)) throw DomainError("measure_levels: M must be positive");
  LevelMeasurements out;
  out.levels = level_sequence(M, m, j_max);
  out.Y.assign(j_max + 1, 0.0);
  out.E.assign(j_max + 1, 0.0);
  const double e = 0.5 * (m + 1.0);
  const double power = 2.0 * m * q_bar / (m + 1.0);
  const auto wt = series.time_weights();
  const Grid& grid = series.grid();
  std::vector<double> node_w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) node_w[i] = grid.node_weight(i);
  for (std::size_t j = 0; j <= j_max; ++j) {
    const double Mj = out.levels[j];
    const double Mje = std::pow(Mj, e);
    for (std::size_t n = 0; n < series.size(); ++n) {
      const auto v = series[n].values();
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > Mj)) continue;
        const double w = wt[n] * node_w[i];
        out.E[j] += w;
        out.Y[j] += w * std::pow(std::pow(v[i], e) - Mje, power);
      }
    }
  }
  return out;
}

double level_measure_bound_excess(const LevelMeasurements& levels, double M, double m, double q_bar) {
  double worst = -std::numeric_limits<double>::infinity();
  const double power = 2.0 * m * q_bar / (m + 1.0);
  for (std::size_t j = 0; j + 1 < levels.E.size(); ++j) {
    const double bound =
        std::pow(M, -m * q_bar) * std::pow(2.0, static_cast<double>(j + 1) * power) * levels.Y[j];
    worst = std::max(worst, levels.E[j + 1] - bound);
  }
  return worst;
}

RecursionEnvelope recursion_envelope(const LevelMeasurements& levels, double M, double m, double q_bar,
                                     double delta, std::size_t fit_steps) {
  if (!(delta > 0.0)) throw DomainError("recursion_envelope: delta must be positive");
  RecursionEnvelope r;
  const auto& Y = levels.Y;
  auto first = std::find_if(Y.begin(), Y.end(), [](double y) { return y > 0.0; });
  if (first == Y.end()) throw DomainError("recursion_envelope: every level set is empty");
  r.first = static_cast<std::size_t>(first - Y.begin());
  r.last = r.first;
  while (r.last + 1 < Y.size() && Y[r.last + 1] > 0.0) ++r.last;
  if (r.last == r.first) throw DomainError("recursion_envelope: fewer than two populated levels");

  const double b = std::pow(2.0, 2.0 * m * q_bar * (1.0 + delta) / (m + 1.0));
  const double scale = std::pow(M, -m * q_bar * (1.0 + delta));
  const std::size_t fit_end = fit_steps == 0 ? r.last : std::min(r.last, r.first + fit_steps);
  for (std::size_t j = r.first; j < fit_end; ++j) {
    const double step = scale * std::pow(b, static_cast<double>(j)) * std::pow(Y[j], 1.0 + delta);
    r.K_fit = std::max(r.K_fit, Y[j + 1] / step);
  }
  const double C = r.K_fit * scale * std::pow(b, static_cast<double>(r.first));
  const FastGeometric z = fast_geometric_iterate(C, b, delta, Y[r.first], r.last - r.first);
  r.envelope = z.sequence;
  for (std::size_t j = r.first; j <= r.last; ++j)
    r.worst_ratio = std::max(r.worst_ratio, Y[j] / r.envelope[j - r.first]);
  return r;
}

}  // namespace anisodnl
