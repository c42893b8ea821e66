#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "phc/geometry.hpp"

namespace phc {

enum class BasisKind { p1_interval, q1_surface, q1_volume };

/// Lowest-order nodal basis on a tensor-product mesh built from 1D factors.
///
/// Factor order is (axial, azimuthal[, thickness]). Dof numbering matches
/// IntervalMesh, TensorBoundary::index and SolidDomain::index, so the Q1 surface
/// basis of a coupling face has the same indices as layer 0 of the volume basis.
/// Local dof `a` of a cell takes the right-hand node of factor d when bit d of `a` is set.
class BasisSet {
 public:
  static BasisSet interval(const IntervalMesh& mesh);
  static BasisSet surface(const TensorBoundary& boundary);
  static BasisSet volume(const SolidDomain& domain);

  BasisKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return static_cast<int>(factors_.size()); }
  int polynomial_degree() const noexcept { return 1; }
  const std::vector<IntervalMesh>& factors() const noexcept { return factors_; }
  const IntervalMesh& factor(int d) const { return factors_.at(static_cast<std::size_t>(d)); }

  std::size_t n_dofs() const noexcept;
  std::size_t n_cells() const noexcept;
  int dofs_per_cell() const noexcept { return 1 << dim(); }
  double measure() const noexcept;

  /// Per-factor cell indices of `cell`.
  std::array<int, 3> cell_index(std::size_t cell) const noexcept;
  /// Global dof of per-factor node indices.
  std::size_t dof(const std::array<std::size_t, 3>& node) const noexcept;
  /// Global dofs of a cell in local order.
  std::array<std::size_t, 8> cell_dofs(std::size_t cell) const noexcept;
  /// Lower-left corner of a cell.
  std::array<double, 3> cell_origin(std::size_t cell) const noexcept;
  /// Physical cell widths (identical for every cell of a uniform mesh).
  std::array<double, 3> cell_widths() const noexcept;
  double cell_measure() const noexcept;

  /// Node coordinates of a dof.
  std::array<double, 3> dof_coordinates(std::size_t dof) const noexcept;

  /// Local shape value and physical gradient at reference point `xi` in [0, 1]^dim.
  double shape_value(int local, std::span<const double> xi) const noexcept;
  std::array<double, 3> shape_gradient(int local, std::span<const double> xi) const noexcept;

  /// Evaluate a finite-element function at a physical point.
  double evaluate(std::span<const double> coefficients, std::span<const double> x) const;

 private:
  BasisSet(BasisKind kind, std::vector<IntervalMesh> factors);

  BasisKind kind_;
  std::vector<IntervalMesh> factors_;
};

/// P1 hat function on an interval mesh, evaluated at physical x (handles periodic wrap).
double hat_value(const IntervalMesh& mesh, std::size_t node, double x) noexcept;

}  // namespace phc
