#pragma once

#include <vector>

#include "anisodnl/grid.hpp"
#include "anisodnl/model.hpp"

namespace anisodnl {

struct EnergyReport {
  double M = 0.0;
  double m_star = 0.0;
  double level_energy = 0.0;          ///< sup_t int (v^{(m+1)/2} - M^{(m+1)/2})_+^2
  std::vector<double> gradient_terms;  ///< int int v^{(m_j-m)(p_j-1)} |d_j (v^m - M^m)_+|^{p_j}
  double lhs = 0.0;
  double rhs = 0.0;    ///< int int |f|^{p_bar'} on {v > M}
  double ratio = 0.0;  ///< lhs / rhs; 0 when both vanish, +inf when only rhs does
};

/// Level-set energy of a computed series against the source mass above level
/// M. Throws DomainError when M < M_* (evaluated on the series' grid and
/// frame times) or when the series has negative values.
EnergyReport energy_check(const TimeSeries& series, const ProblemSpec& spec, double M);

/// M_* = max(sup |u0|, sup over boundary nodes and frame times of |g|) + 1.
double m_star_on(const TimeSeries& series, const ProblemSpec& spec);

}  // namespace anisodnl
