#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "anisodnl/grid.hpp"
#include "anisodnl/model.hpp"

namespace anisodnl {

/// Random zero-boundary field: up to four products of sines with integer
/// wave numbers in [1, 4], coefficients in [-1, 1], scaled by an amplitude
/// log-uniform in [0.1, 10].
ScalarField random_zero_boundary_field(const GridPtr& grid, std::mt19937_64& rng);

/// int |u|^{p_bar} / sum_j int |d_j u|^{p_j}; 0 for the zero field.
double troisi_ratio(const ScalarField& field, const Exponents& exponents);

struct TroisiCalibration {
  double constant = 0.0;  ///< raw supremum padded by 10 %
  double raw = 0.0;
  std::size_t samples = 0;
};

/// Supremum of troisi_ratio over `samples` random fields plus an amplitude
/// sweep of the fundamental mode, padded by 10 %.
TroisiCalibration calibrate_troisi(const GridPtr& grid, const Exponents& exponents, std::size_t samples,
                                   std::uint64_t seed);

}  // namespace anisodnl
