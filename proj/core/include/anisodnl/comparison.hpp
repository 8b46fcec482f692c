#pragma once

#include <cstddef>
#include <vector>

#include "anisodnl/grid.hpp"
#include "anisodnl/model.hpp"

namespace anisodnl {

struct ComparisonReport {
  std::size_t t1_index = 0;
  std::vector<double> times;  ///< t_2 values, every frame after t_1
  std::vector<double> lhs;    ///< int (u - v)_+(t_2)
  std::vector<double> rhs;    ///< source term on [t_1, t_2] plus int (u - v)_+(t_1)
  double violation = 0.0;     ///< max(0, max_i lhs_i - rhs_i)
  double max_excess = 0.0;    ///< max over nodes and frames of (u - v)_+
  double boundary_min_v = 0.0;
  bool hypothesis_ok = false;  ///< v > 0 on every boundary node at every frame
};

/// Both sides of the L^1 comparison inequality for all sampled t_2 > t_1.
/// The source integral uses the right-endpoint rule of the backward-Euler
/// scheme. A node counts as {u = v = 0} when both values lie below
/// `zero_threshold`. Throws DomainError for mismatched series.
ComparisonReport comparison_check(const TimeSeries& u, const TimeSeries& v, const SpaceTimeFn& f_u,
                                  const SpaceTimeFn& f_v, std::size_t t1_index, double zero_threshold);

}  // namespace anisodnl
