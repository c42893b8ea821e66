#include "phc/geometry.hpp"

#include <cmath>
#include <string>

#include "phc/errors.hpp"

namespace phc {

IntervalMesh::IntervalMesh(double start, double end, int n_cells, bool periodic)
    : start_(start), end_(end), n_cells_(n_cells), periodic_(periodic) {
  if (!(end > start)) {
    throw DomainError("interval extent non-positive: [" + std::to_string(start) + ", " +
                      std::to_string(end) + "]");
  }
  if (n_cells < 1) {
    throw DomainError("interval cell count must be >= 1, got " + std::to_string(n_cells));
  }
}

std::vector<double> IntervalMesh::nodes() const {
  std::vector<double> x(n_nodes());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = node(i);
  return x;
}

std::array<std::size_t, 2> IntervalMesh::cell_nodes(int cell) const noexcept {
  const auto left = static_cast<std::size_t>(cell);
  auto right = left + 1;
  if (periodic_ && right == static_cast<std::size_t>(n_cells_)) right = 0;
  return {left, right};
}

bool IntervalMesh::matches(const IntervalMesh& other) const noexcept {
  return start_ == other.start_ && end_ == other.end_ && n_cells_ == other.n_cells_ &&
         periodic_ == other.periodic_;
}

TensorBoundary::TensorBoundary(IntervalMesh axial, IntervalMesh azimuthal)
    : gamma1_(axial), gamma2_(azimuthal), measure2_(azimuthal.length()) {
  if (gamma1_.periodic()) throw DomainError("Gamma_1 (axial factor) must not be periodic");
  if (!gamma2_.periodic()) throw DomainError("Gamma_2 (azimuthal factor) must be periodic");
}

SolidDomain::SolidDomain(IntervalMesh axial, IntervalMesh azimuthal, IntervalMesh thickness)
    : axial_(axial), azimuthal_(azimuthal), thickness_(thickness) {
  if (axial_.periodic()) throw DomainError("axial mesh must not be periodic");
  if (!azimuthal_.periodic()) throw DomainError("azimuthal mesh must be periodic");
  if (thickness_.periodic()) throw DomainError("thickness mesh must not be periodic");
}

std::size_t SolidDomain::n_cells() const noexcept {
  return static_cast<std::size_t>(axial_.n_cells()) * static_cast<std::size_t>(azimuthal_.n_cells()) *
         static_cast<std::size_t>(thickness_.n_cells());
}

std::array<double, 3> SolidDomain::node(std::size_t index) const noexcept {
  const std::size_t n2 = azimuthal_.n_nodes();
  const std::size_t n1 = axial_.n_nodes();
  const std::size_t j = index % n2;
  const std::size_t i = (index / n2) % n1;
  const std::size_t k = index / (n1 * n2);
  return node(i, j, k);
}

std::vector<std::size_t> SolidDomain::coupling_face_nodes() const {
  std::vector<std::size_t> out;
  out.reserve(axial_.n_nodes() * azimuthal_.n_nodes());
  for (std::size_t i = 0; i < axial_.n_nodes(); ++i)
    for (std::size_t j = 0; j < azimuthal_.n_nodes(); ++j) out.push_back(index(i, j, 0));
  return out;
}

std::vector<std::size_t> SolidDomain::external_face_nodes() const {
  const std::size_t k = thickness_.n_nodes() - 1;
  std::vector<std::size_t> out;
  out.reserve(axial_.n_nodes() * azimuthal_.n_nodes());
  for (std::size_t i = 0; i < axial_.n_nodes(); ++i)
    for (std::size_t j = 0; j < azimuthal_.n_nodes(); ++j) out.push_back(index(i, j, k));
  return out;
}

SolidDomain build_solid_domain(double a, double b, double circumference, double depth, int n_ax,
                               int n_az, int n_th) {
  if (!(b > a)) throw DomainError("axial extent non-positive");
  if (!(circumference > 0.0)) throw DomainError("circumference non-positive");
  if (!(depth > 0.0)) throw DomainError("depth non-positive");
  if (n_ax < 1) throw DomainError("n_ax must be >= 1");
  if (n_az < 1) throw DomainError("n_az must be >= 1");
  if (n_th < 1) throw DomainError("n_th must be >= 1");
  return SolidDomain(IntervalMesh(a, b, n_ax, false), IntervalMesh(0.0, circumference, n_az, true),
                     IntervalMesh(0.0, depth, n_th, false));
}

}  // namespace phc
