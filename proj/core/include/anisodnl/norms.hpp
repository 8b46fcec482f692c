#pragma once

#include <vector>

#include "anisodnl/grid.hpp"
#include "anisodnl/model.hpp"

namespace anisodnl {

/// sum_n w_n int |u(t_n)|^q with trapezoid weights in space and time.
double spacetime_integral_power(const TimeSeries& series, double q);

/// (spacetime_integral_power)^{1/q}.
double spacetime_lp_norm(const TimeSeries& series, double q);

/// Entry j: || d_j u^{m_j} ||_{L^{p_j}(Omega_T)}.
std::vector<double> gradient_power_norms(const TimeSeries& series, const Exponents& exponents);

/// ||u - v||_{L^{q*}} + sum_j ||d_j u^{m_j} - d_j v^{m_j}||_{L^{p_j}}, with
/// q* = max(m + 1, max_j m_j). Both series must share grid and times.
double vpm_distance(const TimeSeries& u, const TimeSeries& v, const Exponents& exponents);

/// max over nodes and frames of (a - b)_+.
double max_positive_part(const TimeSeries& a, const TimeSeries& b);

/// Throws DomainError unless both series share grid and frame times.
void require_compatible(const TimeSeries& a, const TimeSeries& b, const char* where);

}  // namespace anisodnl
