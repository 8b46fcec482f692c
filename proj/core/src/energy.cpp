#include "anisodnl/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anisodnl/errors.hpp"

namespace anisodnl {

double m_star_on(const TimeSeries& series, const ProblemSpec& spec) {
  const GridPtr& grid = series.grid_ptr();
  double sup = sample(grid, spec.u0).sup_norm();
  for (const auto& frame : series) {
    const ScalarField g = sample(grid, spec.g, frame.time());
    for (std::size_t i = 0; i < grid->size(); ++i)
      if (grid->is_boundary(i)) sup = std::max(sup, std::abs(g[i]));
  }
  return sup + 1.0;
}

EnergyReport energy_check(const TimeSeries& series, const ProblemSpec& spec, double M) {
  if (series.size() < 2) throw DomainError("energy_check: need at least two frames");
  if (series.grid().dim() != spec.dim()) throw DomainError("energy_check: grid dimension mismatch");
  if (series.min() < 0.0) throw DomainError("energy_check: series has negative values");
  EnergyReport r;
  r.M = M;
  r.m_star = m_star_on(series, spec);
  if (M < r.m_star) throw DomainError("energy_check: M must be at least M_*");

  const Exponents& ex = spec.exponents;
  const double m = ex.m_min();
  const double e = 0.5 * (m + 1.0);
  const double Me = std::pow(M, e);
  const double Mm = std::pow(M, m);
  const double p_conj = compute_bar_exponents(ex).p_bar_conj;
  const GridPtr& grid = series.grid_ptr();
  const auto wt = series.time_weights();
  r.gradient_terms.assign(ex.dim(), 0.0);

  for (std::size_t n = 0; n < series.size(); ++n) {
    const ScalarField& v = series[n];
    std::vector<double> level(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const double d = std::max(std::pow(v[i], e) - Me, 0.0);
      level[i] = d * d;
    }
    r.level_energy = std::max(r.level_energy, integrate(ScalarField(grid, std::move(level), v.time())));

    std::vector<double> cut(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) cut[i] = std::max(std::pow(v[i], m) - Mm, 0.0);
    const ScalarField cut_field(grid, std::move(cut), v.time());
    for (std::size_t j = 0; j < ex.dim(); ++j) {
      FaceField d = face_diff_power(cut_field, 1.0, j);
      const double weight_power = (ex.m[j] - m) * (ex.p[j] - 1.0);
      const std::size_t s = grid->stride(j);
      for (std::size_t i = 0; i < grid->size(); ++i) {
        if (!grid->has_face(j, i)) continue;
        const double v_face = 0.5 * (v[i] + v[i + s]);
        d.values[i] = std::pow(v_face, weight_power / ex.p[j]) * d.values[i];
      }
      r.gradient_terms[j] += wt[n] * integrate_power(d, ex.p[j]);
    }

    const ScalarField f = sample(grid, spec.f, v.time());
    double src = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i)
      if (v[i] > M) src += grid->node_weight(i) * std::pow(std::abs(f[i]), p_conj);
    r.rhs += wt[n] * src;
  }

  r.lhs = r.level_energy;
  for (double g : r.gradient_terms) r.lhs += g;
  if (r.rhs > 0.0) r.ratio = r.lhs / r.rhs;
  else r.ratio = r.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return r;
}

}  // namespace anisodnl
