#include "anisodnl/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anisodnl/algebra.hpp"

namespace anisodnl {

namespace {

ScalarField sine_mode(const GridPtr& grid, const std::vector<int>& waves, double amplitude) {
  std::vector<double> values(grid->size());
  std::vector<double> x(grid->dim());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    grid->point(i, x);
    double v = amplitude;
    for (std::size_t j = 0; j < grid->dim(); ++j)
      v *= std::sin(waves[j] * std::numbers::pi * x[j] / grid->extent(j));
    values[i] = grid->is_boundary(i) ? 0.0 : v;
  }
  return ScalarField(grid, std::move(values));
}

}  // namespace

ScalarField random_zero_boundary_field(const GridPtr& grid, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> wave(1, 4);
  std::uniform_int_distribution<int> terms(1, 4);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> log_amp(-1.0, 1.0);
  std::vector<double> acc(grid->size(), 0.0);
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    std::vector<int> waves(grid->dim());
    for (int& w : waves) w = wave(rng);
    const ScalarField mode = sine_mode(grid, waves, coef(rng));
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += mode[i];
  }
  const double amplitude = std::pow(10.0, log_amp(rng));
  for (double& v : acc) v *= amplitude;
  return ScalarField(grid, std::move(acc));
}

double troisi_ratio(const ScalarField& field, const Exponents& exponents) {
  const TroisiGap gap = sobolev_troisi_gap(field, exponents);
  if (gap.rhs == 0.0) return 0.0;
  return gap.lhs / gap.rhs;
}

TroisiCalibration calibrate_troisi(const GridPtr& grid, const Exponents& exponents, std::size_t samples,
                                   std::uint64_t seed) {
  TroisiCalibration c;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    c.raw = std::max(c.raw, troisi_ratio(random_zero_boundary_field(grid, rng), exponents));
    ++c.samples;
  }
  const std::vector<int> fundamental(grid->dim(), 1);
  for (int a = 0; a <= 200; ++a) {
    const double amplitude = std::pow(10.0, -1.0 + 2.0 * a / 200.0);
    c.raw = std::max(c.raw, troisi_ratio(sine_mode(grid, fundamental, amplitude), exponents));
    ++c.samples;
  }
  c.constant = kCalibrationPadding * c.raw;
  return c;
}

}  // namespace anisodnl
