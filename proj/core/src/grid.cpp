#include "anisodnl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anisodnl/errors.hpp"

namespace anisodnl {

Grid::Grid(std::vector<std::size_t> counts, std::vector<double> extents)
    : counts_(std::move(counts)), extents_(std::move(extents)) {
  if (counts_.empty()) throw DomainError("grid: dimension must be at least 1");
  if (counts_.size() != extents_.size()) throw DomainError("grid: counts and extents differ in length");
  size_ = 1;
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] < 3) throw DomainError("grid: need at least 3 nodes per axis");
    if (!(extents_[j] > 0.0)) throw DomainError("grid: extents must be positive");
    spacings_.push_back(extents_[j] / static_cast<double>(counts_[j] - 1));
    strides_.push_back(size_);
    size_ *= counts_[j];
  }
}

void Grid::point(std::size_t node, std::span<double> out) const {
  for (std::size_t j = 0; j < dim(); ++j) out[j] = coordinate(j, index(node, j));
}

std::vector<double> Grid::point(std::size_t node) const {
  std::vector<double> x(dim());
  point(node, x);
  return x;
}

bool Grid::is_boundary(std::size_t node) const {
  for (std::size_t j = 0; j < dim(); ++j) {
    const std::size_t i = index(node, j);
    if (i == 0 || i + 1 == counts_[j]) return true;
  }
  return false;
}

double Grid::node_weight(std::size_t node) const {
  double w = 1.0;
  for (std::size_t j = 0; j < dim(); ++j) {
    const std::size_t i = index(node, j);
    w *= (i == 0 || i + 1 == counts_[j]) ? 0.5 * spacings_[j] : spacings_[j];
  }
  return w;
}

std::size_t Grid::face_count(std::size_t axis) const { return size_ / counts_.at(axis) * (counts_[axis] - 1); }

double Grid::face_weight(std::size_t axis, std::size_t node) const {
  double w = spacings_[axis];
  for (std::size_t j = 0; j < dim(); ++j) {
    if (j == axis) continue;
    const std::size_t i = index(node, j);
    w *= (i == 0 || i + 1 == counts_[j]) ? 0.5 * spacings_[j] : spacings_[j];
  }
  return w;
}

void Grid::face_point(std::size_t axis, std::size_t node, std::span<double> out) const {
  point(node, out);
  out[axis] += 0.5 * spacings_[axis];
}

double Grid::volume() const {
  double v = 1.0;
  for (double l : extents_) v *= l;
  return v;
}

GridPtr make_grid(std::vector<std::size_t> counts, std::vector<double> extents) {
  return std::make_shared<const Grid>(std::move(counts), std::move(extents));
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values, double t)
    : grid_(std::move(grid)), values_(std::move(values)), t_(t) {
  if (!grid_) throw DomainError("field: null grid");
  if (values_.size() != grid_->size()) throw DomainError("field: value count does not match the grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("field: non-finite value");
}

ScalarField::ScalarField(GridPtr grid, double value, double t)
    : ScalarField(grid, std::vector<double>(grid ? grid->size() : 0, value), t) {}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

ScalarField sample(const GridPtr& grid, const SpaceFn& fn, double t) {
  std::vector<double> values(grid->size());
  std::vector<double> x(grid->dim());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    grid->point(i, x);
    values[i] = fn(x);
  }
  return ScalarField(grid, std::move(values), t);
}

ScalarField sample(const GridPtr& grid, const SpaceTimeFn& fn, double t) {
  std::vector<double> values(grid->size());
  std::vector<double> x(grid->dim());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    grid->point(i, x);
    values[i] = fn(x, t);
  }
  return ScalarField(grid, std::move(values), t);
}

void TimeSeries::push_back(ScalarField frame) {
  if (!same_grid(frame.grid_ptr(), grid_)) throw DomainError("time series: frame on a different grid");
  if (!frames_.empty() && !(frame.time() > frames_.back().time()))
    throw DomainError("time series: times must increase strictly");
  frames_.push_back(std::move(frame));
}

std::vector<double> TimeSeries::time_weights() const {
  std::vector<double> w(frames_.size(), 0.0);
  for (std::size_t n = 0; n + 1 < frames_.size(); ++n) {
    const double h = dt(n);
    w[n] += 0.5 * h;
    w[n + 1] += 0.5 * h;
  }
  return w;
}

double TimeSeries::min() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& f : frames_) v = std::min(v, f.min());
  return v;
}

double TimeSeries::max() const {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& f : frames_) v = std::max(v, f.max());
  return v;
}

FaceField face_diff_power(const ScalarField& field, double exponent, std::size_t axis) {
  const Grid& grid = field.grid();
  if (axis >= grid.dim()) throw DomainError("face_diff_power: axis out of range");
  const bool integral = exponent == std::floor(exponent);
  auto power = [&](double v) {
    if (exponent == 1.0) return v;
    if (v < 0.0 && !integral)
      throw DomainError("face_diff_power: negative value with a fractional exponent (nonnegativity violated)");
    return std::pow(v, exponent);
  };
  FaceField out{field.grid_ptr(), axis, std::vector<double>(grid.size(), 0.0)};
  const std::size_t stride = grid.stride(axis);
  const double inv_h = 1.0 / grid.spacing(axis);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.has_face(axis, i)) continue;
    out.values[i] = (power(field[i + stride]) - power(field[i])) * inv_h;
  }
  return out;
}

namespace {

void check_fluxes(std::span<const FaceField> fluxes) {
  if (fluxes.empty()) throw DomainError("divergence: no fluxes");
  const GridPtr& grid = fluxes.front().grid;
  if (!grid) throw DomainError("divergence: null grid");
  if (fluxes.size() != grid->dim()) throw DomainError("divergence: need one flux per axis");
  for (std::size_t j = 0; j < fluxes.size(); ++j) {
    if (!same_grid(fluxes[j].grid, grid)) throw DomainError("divergence: fluxes live on mismatched grids");
    if (fluxes[j].axis != j || fluxes[j].values.size() != grid->size())
      throw DomainError("divergence: malformed face field for axis " + std::to_string(j));
  }
}

}  // namespace

ScalarField divergence(std::span<const FaceField> fluxes) {
  check_fluxes(fluxes);
  const GridPtr& gp = fluxes.front().grid;
  const Grid& grid = *gp;
  std::vector<double> div(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_boundary(i)) continue;
    double s = 0.0;
    for (std::size_t j = 0; j < grid.dim(); ++j) {
      const auto& f = fluxes[j].values;
      s += (f[i] - f[i - grid.stride(j)]) / grid.spacing(j);
    }
    div[i] = s;
  }
  return ScalarField(gp, std::move(div));
}

double net_boundary_flux(std::span<const FaceField> fluxes) {
  check_fluxes(fluxes);
  const Grid& grid = *fluxes.front().grid;
  double cell = 1.0;
  for (std::size_t j = 0; j < grid.dim(); ++j) cell *= grid.spacing(j);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_boundary(i)) continue;
    for (std::size_t j = 0; j < grid.dim(); ++j) {
      const std::size_t idx = grid.index(i, j);
      const double area = cell / grid.spacing(j);
      if (idx + 2 == grid.count(j)) total += fluxes[j].values[i] * area;
      if (idx == 1) total -= fluxes[j].values[i - grid.stride(j)] * area;
    }
  }
  return total;
}

double integrate_power(const ScalarField& field, double exponent) {
  if (exponent < 0.0) throw DomainError("integrate_power: exponent must be nonnegative");
  const Grid& grid = field.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) s += std::pow(std::abs(field[i]), exponent) * grid.node_weight(i);
  return s;
}

double integrate(const ScalarField& field) {
  const Grid& grid = field.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) s += field[i] * grid.node_weight(i);
  return s;
}

double integrate_power(const FaceField& face, double exponent) {
  if (exponent < 0.0) throw DomainError("integrate_power: exponent must be nonnegative");
  const Grid& grid = *face.grid;
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.has_face(face.axis, i)) continue;
    s += std::pow(std::abs(face.values[i]), exponent) * grid.face_weight(face.axis, i);
  }
  return s;
}

TroisiGap sobolev_troisi_gap(const ScalarField& field, const Exponents& exponents) {
  const Grid& grid = field.grid();
  if (exponents.dim() != grid.dim()) throw DomainError("sobolev_troisi_gap: exponent dimension mismatch");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid.is_boundary(i) && field[i] != 0.0)
      throw DomainError("sobolev_troisi_gap: field must vanish on the boundary");
  const BarExponents bar = compute_bar_exponents(exponents);
  TroisiGap gap;
  gap.lhs = integrate_power(field, bar.p_bar);
  for (std::size_t j = 0; j < grid.dim(); ++j)
    gap.rhs += integrate_power(face_diff_power(field, 1.0, j), exponents.p[j]);
  return gap;
}

}  // namespace anisodnl
