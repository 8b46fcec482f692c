#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "anisodnl/model.hpp"

namespace anisodnl {

/// Tensor-product nodal grid on [0, L_1] x ... x [0, L_N]. Axis 0 varies
/// fastest in the linear node ordering. Boundary nodes are included.
class Grid {
 public:
  Grid(std::vector<std::size_t> counts, std::vector<double> extents);

  std::size_t dim() const noexcept { return counts_.size(); }
  std::size_t count(std::size_t axis) const { return counts_.at(axis); }
  double extent(std::size_t axis) const { return extents_.at(axis); }
  double spacing(std::size_t axis) const { return spacings_.at(axis); }
  std::size_t stride(std::size_t axis) const { return strides_.at(axis); }
  std::size_t size() const noexcept { return size_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  const std::vector<double>& extents() const noexcept { return extents_; }

  double coordinate(std::size_t axis, std::size_t index) const {
    return static_cast<double>(index) * spacings_[axis];
  }
  /// Index of node `node` along `axis`.
  std::size_t index(std::size_t node, std::size_t axis) const {
    return (node / strides_[axis]) % counts_[axis];
  }
  void point(std::size_t node, std::span<double> out) const;
  std::vector<double> point(std::size_t node) const;
  bool is_boundary(std::size_t node) const;

  /// Trapezoid weight of a node: product of h_j, halved per axis on which the
  /// node lies on the boundary.
  double node_weight(std::size_t node) const;

  /// Faces of `axis` connect node i to i + e_axis and are stored at the index
  /// of their lower node; nodes on the last layer along `axis` own no face.
  bool has_face(std::size_t axis, std::size_t node) const {
    return index(node, axis) + 1 < counts_[axis];
  }
  std::size_t face_count(std::size_t axis) const;
  /// Quadrature weight of a face: h_axis times the trapezoid weights of the
  /// remaining axes.
  double face_weight(std::size_t axis, std::size_t node) const;
  /// Midpoint of the face owned by `node`.
  void face_point(std::size_t axis, std::size_t node, std::span<double> out) const;

  double volume() const;

  bool operator==(const Grid& other) const {
    return counts_ == other.counts_ && extents_ == other.extents_;
  }

 private:
  std::vector<std::size_t> counts_;
  std::vector<double> extents_;
  std::vector<double> spacings_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(std::vector<std::size_t> counts, std::vector<double> extents);

/// True when both pointers refer to equal grids.
bool same_grid(const GridPtr& a, const GridPtr& b);

/// Nodal values of one scalar quantity at one time instant.
class ScalarField {
 public:
  ScalarField(GridPtr grid, std::vector<double> values, double t = 0.0);
  /// Field with every node set to `value`.
  ScalarField(GridPtr grid, double value, double t = 0.0);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  double time() const noexcept { return t_; }
  void set_time(double t) noexcept { t_ = t; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double min() const;
  double max() const;
  double sup_norm() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  double t_ = 0.0;
};

/// Samples a space function (or a space-time function at time t) on a grid.
ScalarField sample(const GridPtr& grid, const SpaceFn& fn, double t = 0.0);
ScalarField sample(const GridPtr& grid, const SpaceTimeFn& fn, double t);

/// Ordered frames t_0 < t_1 < ... on a shared grid.
class TimeSeries {
 public:
  explicit TimeSeries(GridPtr grid) : grid_(std::move(grid)) {}

  void push_back(ScalarField frame);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return frames_.size(); }
  bool empty() const noexcept { return frames_.empty(); }
  const ScalarField& operator[](std::size_t n) const { return frames_.at(n); }
  const ScalarField& front() const { return frames_.front(); }
  const ScalarField& back() const { return frames_.back(); }
  auto begin() const { return frames_.begin(); }
  auto end() const { return frames_.end(); }
  double time(std::size_t n) const { return frames_.at(n).time(); }
  /// t_{n+1} - t_n.
  double dt(std::size_t n) const { return time(n + 1) - time(n); }
  /// Trapezoid weights in time over all frames.
  std::vector<double> time_weights() const;

  double min() const;
  double max() const;

 private:
  GridPtr grid_;
  std::vector<ScalarField> frames_;
};

/// Values on the faces of one axis, stored node-shaped (see Grid::has_face);
/// slots without a face hold zero.
struct FaceField {
  GridPtr grid;
  std::size_t axis = 0;
  std::vector<double> values;
};

/// (u_{i+e_j}^q - u_i^q) / h_j on every face of axis j.
FaceField face_diff_power(const ScalarField& field, double exponent, std::size_t axis);

/// Conservative divergence sum_j (F_{i+1/2} - F_{i-1/2}) / h_j on interior
/// nodes; boundary nodes are set to zero. Expects one FaceField per axis.
ScalarField divergence(std::span<const FaceField> fluxes);

/// Outward flux through the faces that join interior nodes to the boundary,
/// weighted by face area. Equals sum_interior div * prod_j h_j.
double net_boundary_flux(std::span<const FaceField> fluxes);

/// sum_i |u_i|^q w_i with trapezoid weights.
double integrate_power(const ScalarField& field, double exponent);
/// Signed trapezoid integral.
double integrate(const ScalarField& field);
/// sum_faces |F|^q w_face.
double integrate_power(const FaceField& face, double exponent);

struct TroisiGap {
  double lhs = 0.0;  ///< int |u|^{p_bar}
  double rhs = 0.0;  ///< sum_j int |d_j u|^{p_j}
};

/// Both sides of the anisotropic Sobolev-Troisi estimate for a field that
/// vanishes on the boundary. Throws DomainError otherwise.
TroisiGap sobolev_troisi_gap(const ScalarField& field, const Exponents& exponents);

}  // namespace anisodnl
