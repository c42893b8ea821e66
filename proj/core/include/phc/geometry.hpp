#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace phc {

/// Uniform mesh of [start, end]. A periodic mesh identifies the two end points,
/// so it has n_cells nodes instead of n_cells + 1.
class IntervalMesh {
 public:
  IntervalMesh(double start, double end, int n_cells, bool periodic = false);

  double start() const noexcept { return start_; }
  double end() const noexcept { return end_; }
  double length() const noexcept { return end_ - start_; }
  int n_cells() const noexcept { return n_cells_; }
  bool periodic() const noexcept { return periodic_; }
  double cell_width() const noexcept { return length() / n_cells_; }

  std::size_t n_nodes() const noexcept {
    return periodic_ ? static_cast<std::size_t>(n_cells_) : static_cast<std::size_t>(n_cells_) + 1;
  }
  double node(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * cell_width(); }
  std::vector<double> nodes() const;

  /// Global node indices of the two ends of `cell` (wraps for periodic meshes).
  std::array<std::size_t, 2> cell_nodes(int cell) const noexcept;

  /// Same cells, twice as many.
  IntervalMesh refined() const { return IntervalMesh(start_, end_, 2 * n_cells_, periodic_); }

  /// Node-for-node equality.
  bool matches(const IntervalMesh& other) const noexcept;

 private:
  double start_;
  double end_;
  int n_cells_;
  bool periodic_;
};

/// Product boundary Gamma = Gamma_1 x Gamma_2 with an axial (open) factor and an
/// azimuthal (periodic) factor.
class TensorBoundary {
 public:
  TensorBoundary(IntervalMesh axial, IntervalMesh azimuthal);

  const IntervalMesh& gamma1() const noexcept { return gamma1_; }
  const IntervalMesh& gamma2() const noexcept { return gamma2_; }
  double measure2() const noexcept { return measure2_; }
  double measure() const noexcept { return gamma1_.length() * measure2_; }
  std::size_t n_cells() const noexcept {
    return static_cast<std::size_t>(gamma1_.n_cells()) * static_cast<std::size_t>(gamma2_.n_cells());
  }
  std::size_t n_nodes() const noexcept { return gamma1_.n_nodes() * gamma2_.n_nodes(); }

  /// Surface node index of (axial i, azimuthal j).
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * gamma2_.n_nodes() + j; }
  std::array<double, 2> node(std::size_t i, std::size_t j) const noexcept {
    return {gamma1_.node(i), gamma2_.node(j)};
  }

 private:
  IntervalMesh gamma1_;
  IntervalMesh gamma2_;
  double measure2_;
};

/// Solid box: axial x periodic azimuthal x thickness. The coupling face
/// Gamma_int sits at thickness = start, the external face Gamma_ext at thickness = end.
class SolidDomain {
 public:
  SolidDomain(IntervalMesh axial, IntervalMesh azimuthal, IntervalMesh thickness);

  const IntervalMesh& axial() const noexcept { return axial_; }
  const IntervalMesh& azimuthal() const noexcept { return azimuthal_; }
  const IntervalMesh& thickness() const noexcept { return thickness_; }

  std::size_t n_cells() const noexcept;
  std::size_t n_nodes() const noexcept {
    return axial_.n_nodes() * azimuthal_.n_nodes() * thickness_.n_nodes();
  }
  double volume() const noexcept { return axial_.length() * azimuthal_.length() * thickness_.length(); }

  /// Node index of (axial i, azimuthal j, thickness k). Layer k = 0 is Gamma_int and
  /// its indices coincide with the surface indices of coupling_face().
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return (k * axial_.n_nodes() + i) * azimuthal_.n_nodes() + j;
  }
  std::array<double, 3> node(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return {axial_.node(i), azimuthal_.node(j), thickness_.node(k)};
  }
  std::array<double, 3> node(std::size_t index) const noexcept;

  /// Trace mesh of the coupling face.
  TensorBoundary coupling_face() const { return TensorBoundary(axial_, azimuthal_); }
  std::vector<std::size_t> coupling_face_nodes() const;
  std::vector<std::size_t> external_face_nodes() const;

 private:
  IntervalMesh axial_;
  IntervalMesh azimuthal_;
  IntervalMesh thickness_;
};

/// Box with axial extent [a, b], unrolled circumference and wall depth.
/// Throws DomainError naming the offending parameter.
SolidDomain build_solid_domain(double a, double b, double circumference, double depth, int n_ax,
                               int n_az, int n_th);

}  // namespace phc
