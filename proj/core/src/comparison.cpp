#include "anisodnl/comparison.hpp"

#include <algorithm>
#include <limits>

#include "anisodnl/errors.hpp"
#include "anisodnl/norms.hpp"

namespace anisodnl {

ComparisonReport comparison_check(const TimeSeries& u, const TimeSeries& v, const SpaceTimeFn& f_u,
                                  const SpaceTimeFn& f_v, std::size_t t1_index, double zero_threshold) {
  require_compatible(u, v, "comparison_check");
  if (t1_index + 1 >= u.size()) throw DomainError("comparison_check: t_1 must precede the last frame");
  if (zero_threshold < 0.0) throw DomainError("comparison_check: zero threshold must be nonnegative");

  const GridPtr& grid = u.grid_ptr();
  ComparisonReport r;
  r.t1_index = t1_index;
  r.boundary_min_v = std::numeric_limits<double>::infinity();

  auto positive_mass = [&](std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i)
      s += grid->node_weight(i) * std::max(u[n][i] - v[n][i], 0.0);
    return s;
  };

  for (std::size_t n = 0; n < u.size(); ++n) {
    for (std::size_t i = 0; i < grid->size(); ++i) {
      r.max_excess = std::max(r.max_excess, u[n][i] - v[n][i]);
      if (grid->is_boundary(i)) r.boundary_min_v = std::min(r.boundary_min_v, v[n][i]);
    }
  }
  r.hypothesis_ok = r.boundary_min_v > 0.0;

  double rhs = positive_mass(t1_index);
  for (std::size_t n = t1_index + 1; n < u.size(); ++n) {
    const double t = u.time(n);
    const ScalarField fu = sample(grid, f_u, t);
    const ScalarField fv = sample(grid, f_v, t);
    double src = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const double a = u[n][i], b = v[n][i];
      const bool zero = a <= zero_threshold && b <= zero_threshold;
      if (!(b < a) && !zero) continue;
      const double fu_part = a > 0.0 ? fu[i] : 0.0;
      src += grid->node_weight(i) * (fu_part - fv[i]);
    }
    rhs += u.dt(n - 1) * src;
    r.times.push_back(t);
    r.lhs.push_back(positive_mass(n));
    r.rhs.push_back(rhs);
    r.violation = std::max(r.violation, r.lhs.back() - rhs);
  }
  return r;
}

}  // namespace anisodnl
