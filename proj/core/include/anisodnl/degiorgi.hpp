#pragma once

#include <cstddef>
#include <vector>

#include "anisodnl/grid.hpp"
#include "anisodnl/model.hpp"

namespace anisodnl {

/// Integrals of the data over the space-time cylinder, by trapezoid rules on
/// a sampling grid.
struct DataNorms {
  double u0_sup = 0.0;        ///< sup |u0|
  double g_sup = 0.0;         ///< sup |g| on the lateral boundary
  double m_star = 0.0;        ///< max(u0_sup, g_sup) + 1
  double f_pbar_conj = 0.0;   ///< int int |f|^{p_bar'}
  double f_sigma = 0.0;       ///< int int |f|^{sigma p_bar'}
  double cylinder = 0.0;      ///< |Omega_T|
};

DataNorms measure_data(const ProblemSpec& spec, const GridPtr& grid, std::size_t time_steps);

/// Sampling grid used when none is given: 33 nodes per axis up to N = 2,
/// 17 beyond; 32 time steps.
DataNorms measure_data(const ProblemSpec& spec);

/// Auxiliary exponent vector q with 1 < q_j <= p_j. Equals p when p_bar <= N.
/// Otherwise q_j = p_j for j >= 2 and q_1 solves N / q_bar = sum_j 1/q_j with
/// q_bar starting at 0.99 N and lowered geometrically until q_1 <= p_1.
/// Throws DomainError when no such q_1 > 1 exists (always the case for N = 1).
std::vector<double> select_q(const Exponents& exponents);

/// Harmonic mean of a positive vector.
double harmonic_mean(const std::vector<double>& v);

/// delta = N q_bar / (N + mu) * (1/N - (1/sigma)(1/N + 1/p_bar)).
double degiorgi_delta(std::size_t N, double q_bar, double mu, double sigma, double p_bar);

struct DeGiorgiReport {
  double c_struct = 1.0;
  double m = 1.0;  ///< min_j m_j
  double mu = 2.0;
  double p_bar = 0.0;
  std::vector<double> q;
  double q_bar = 0.0;
  double delta = 0.0;
  double Q = 0.0;
  double b = 0.0;
  double K = 0.0;
  double K0 = 0.0;
  double M = 0.0;
  double L = 0.0;  ///< 2^{2/(m+1)} M, the sup bound
  DataNorms data;
};

/// Level-set constants. Throws DomainError unless sigma > 1 + N / p_bar.
DeGiorgiReport degiorgi_constants(const ProblemSpec& spec, const BarExponents& bar, double c_struct,
                                  const DataNorms& data);
DeGiorgiReport degiorgi_constants(const ProblemSpec& spec, const BarExponents& bar, double c_struct);

/// M_j = M (2 - 2^{-j})^{2/(m+1)} for j = 0..j_max.
std::vector<double> level_sequence(double M, double m, std::size_t j_max);

struct LevelMeasurements {
  std::vector<double> levels;  ///< M_j
  std::vector<double> Y;       ///< int int (v^{(m+1)/2} - M_j^{(m+1)/2})_+^{2 m q_bar / (m+1)}
  std::vector<double> E;       ///< |{v > M_j}| in space-time
};

LevelMeasurements measure_levels(const TimeSeries& series, double M, double m, double q_bar,
                                 std::size_t j_max);

/// max_j (|E_{j+1}| - M^{-m q_bar} 2^{(j+1) 2 m q_bar / (m+1)} Y_j); never
/// positive by Chebyshev.
double level_measure_bound_excess(const LevelMeasurements& levels, double M, double m, double q_bar);

struct RecursionEnvelope {
  std::size_t first = 0;         ///< first index with Y_j > 0
  std::size_t last = 0;          ///< last index with Y_j > 0
  double K_fit = 0.0;            ///< smallest K making every observed step admissible
  std::vector<double> envelope;  ///< Z_first .. Z_last from the fitted recursion
  double worst_ratio = 0.0;      ///< max_j Y_j / Z_j over [first, last]
};

/// Fits Y_{j+1} <= K M^{-m q_bar (1+delta)} b^j Y_j^{1+delta} on the first
/// `fit_steps` populated steps (0: all of them) and iterates the resulting
/// envelope from Y_first. Throws DomainError when fewer than two levels are
/// populated.
RecursionEnvelope recursion_envelope(const LevelMeasurements& levels, double M, double m, double q_bar,
                                     double delta, std::size_t fit_steps = 0);

}  // namespace anisodnl
