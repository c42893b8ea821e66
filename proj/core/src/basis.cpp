#include "phc/basis.hpp"

#include <algorithm>
#include <cmath>

#include "phc/errors.hpp"

namespace phc {

BasisSet::BasisSet(BasisKind kind, std::vector<IntervalMesh> factors)
    : kind_(kind), factors_(std::move(factors)) {}

BasisSet BasisSet::interval(const IntervalMesh& mesh) { return BasisSet(BasisKind::p1_interval, {mesh}); }

BasisSet BasisSet::surface(const TensorBoundary& boundary) {
  return BasisSet(BasisKind::q1_surface, {boundary.gamma1(), boundary.gamma2()});
}

BasisSet BasisSet::volume(const SolidDomain& domain) {
  return BasisSet(BasisKind::q1_volume, {domain.axial(), domain.azimuthal(), domain.thickness()});
}

std::size_t BasisSet::n_dofs() const noexcept {
  std::size_t n = 1;
  for (const auto& f : factors_) n *= f.n_nodes();
  return n;
}

std::size_t BasisSet::n_cells() const noexcept {
  std::size_t n = 1;
  for (const auto& f : factors_) n *= static_cast<std::size_t>(f.n_cells());
  return n;
}

double BasisSet::measure() const noexcept {
  double m = 1.0;
  for (const auto& f : factors_) m *= f.length();
  return m;
}

// Cells and dofs share the layout ((c2 * m0) + c0) * m1 + c1.
std::array<int, 3> BasisSet::cell_index(std::size_t cell) const noexcept {
  std::array<int, 3> c{0, 0, 0};
  const auto m0 = static_cast<std::size_t>(factors_[0].n_cells());
  switch (dim()) {
    case 1:
      c[0] = static_cast<int>(cell);
      break;
    case 2: {
      const auto m1 = static_cast<std::size_t>(factors_[1].n_cells());
      c[0] = static_cast<int>(cell / m1);
      c[1] = static_cast<int>(cell % m1);
      break;
    }
    default: {
      const auto m1 = static_cast<std::size_t>(factors_[1].n_cells());
      c[1] = static_cast<int>(cell % m1);
      c[0] = static_cast<int>((cell / m1) % m0);
      c[2] = static_cast<int>(cell / (m1 * m0));
      break;
    }
  }
  return c;
}

std::size_t BasisSet::dof(const std::array<std::size_t, 3>& node) const noexcept {
  switch (dim()) {
    case 1:
      return node[0];
    case 2:
      return node[0] * factors_[1].n_nodes() + node[1];
    default:
      return (node[2] * factors_[0].n_nodes() + node[0]) * factors_[1].n_nodes() + node[1];
  }
}

std::array<std::size_t, 8> BasisSet::cell_dofs(std::size_t cell) const noexcept {
  const auto c = cell_index(cell);
  std::array<std::array<std::size_t, 2>, 3> ends{};
  for (int d = 0; d < dim(); ++d) ends[static_cast<std::size_t>(d)] = factors_[static_cast<std::size_t>(d)].cell_nodes(c[static_cast<std::size_t>(d)]);
  std::array<std::size_t, 8> dofs{};
  for (int a = 0; a < dofs_per_cell(); ++a) {
    std::array<std::size_t, 3> node{0, 0, 0};
    for (int d = 0; d < dim(); ++d) node[static_cast<std::size_t>(d)] = ends[static_cast<std::size_t>(d)][(a >> d) & 1];
    dofs[static_cast<std::size_t>(a)] = dof(node);
  }
  return dofs;
}

std::array<double, 3> BasisSet::cell_origin(std::size_t cell) const noexcept {
  const auto c = cell_index(cell);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim(); ++d) {
    const auto& f = factors_[static_cast<std::size_t>(d)];
    x[static_cast<std::size_t>(d)] = f.node(static_cast<std::size_t>(c[static_cast<std::size_t>(d)]));
  }
  return x;
}

std::array<double, 3> BasisSet::cell_widths() const noexcept {
  std::array<double, 3> h{1.0, 1.0, 1.0};
  for (int d = 0; d < dim(); ++d) h[static_cast<std::size_t>(d)] = factors_[static_cast<std::size_t>(d)].cell_width();
  return h;
}

double BasisSet::cell_measure() const noexcept {
  double m = 1.0;
  for (const auto& f : factors_) m *= f.cell_width();
  return m;
}

std::array<double, 3> BasisSet::dof_coordinates(std::size_t dof) const noexcept {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  switch (dim()) {
    case 1:
      x[0] = factors_[0].node(dof);
      break;
    case 2: {
      const std::size_t n1 = factors_[1].n_nodes();
      x[0] = factors_[0].node(dof / n1);
      x[1] = factors_[1].node(dof % n1);
      break;
    }
    default: {
      const std::size_t n0 = factors_[0].n_nodes();
      const std::size_t n1 = factors_[1].n_nodes();
      x[1] = factors_[1].node(dof % n1);
      x[0] = factors_[0].node((dof / n1) % n0);
      x[2] = factors_[2].node(dof / (n1 * n0));
      break;
    }
  }
  return x;
}

double BasisSet::shape_value(int local, std::span<const double> xi) const noexcept {
  double v = 1.0;
  for (int d = 0; d < dim(); ++d) {
    const double t = xi[static_cast<std::size_t>(d)];
    v *= ((local >> d) & 1) ? t : 1.0 - t;
  }
  return v;
}

std::array<double, 3> BasisSet::shape_gradient(int local, std::span<const double> xi) const noexcept {
  std::array<double, 3> g{0.0, 0.0, 0.0};
  const auto h = cell_widths();
  for (int d = 0; d < dim(); ++d) {
    double v = ((local >> d) & 1) ? 1.0 / h[static_cast<std::size_t>(d)] : -1.0 / h[static_cast<std::size_t>(d)];
    for (int e = 0; e < dim(); ++e) {
      if (e == d) continue;
      const double t = xi[static_cast<std::size_t>(e)];
      v *= ((local >> e) & 1) ? t : 1.0 - t;
    }
    g[static_cast<std::size_t>(d)] = v;
  }
  return g;
}

double BasisSet::evaluate(std::span<const double> coefficients, std::span<const double> x) const {
  if (coefficients.size() != n_dofs()) {
    throw CouplingError("coefficient vector has " + std::to_string(coefficients.size()) +
                        " entries, basis has " + std::to_string(n_dofs()));
  }
  std::array<int, 3> c{0, 0, 0};
  std::array<double, 3> xi{0.0, 0.0, 0.0};
  for (int d = 0; d < dim(); ++d) {
    const auto& f = factors_[static_cast<std::size_t>(d)];
    double t = (x[static_cast<std::size_t>(d)] - f.start()) / f.cell_width();
    if (f.periodic()) {
      t = std::fmod(t, static_cast<double>(f.n_cells()));
      if (t < 0.0) t += f.n_cells();
    }
    int cell = static_cast<int>(std::floor(t));
    cell = std::clamp(cell, 0, f.n_cells() - 1);
    c[static_cast<std::size_t>(d)] = cell;
    xi[static_cast<std::size_t>(d)] = t - cell;
  }
  std::size_t cell = 0;
  switch (dim()) {
    case 1:
      cell = static_cast<std::size_t>(c[0]);
      break;
    case 2:
      cell = static_cast<std::size_t>(c[0]) * static_cast<std::size_t>(factors_[1].n_cells()) + static_cast<std::size_t>(c[1]);
      break;
    default:
      cell = (static_cast<std::size_t>(c[2]) * static_cast<std::size_t>(factors_[0].n_cells()) + static_cast<std::size_t>(c[0])) *
                 static_cast<std::size_t>(factors_[1].n_cells()) +
             static_cast<std::size_t>(c[1]);
      break;
  }
  const auto dofs = cell_dofs(cell);
  double v = 0.0;
  for (int a = 0; a < dofs_per_cell(); ++a) {
    v += coefficients[dofs[static_cast<std::size_t>(a)]] * shape_value(a, std::span<const double>(xi.data(), static_cast<std::size_t>(dim())));
  }
  return v;
}

double hat_value(const IntervalMesh& mesh, std::size_t node, double x) noexcept {
  const double h = mesh.cell_width();
  double d = x - mesh.node(node);
  if (mesh.periodic()) {
    const double L = mesh.length();
    d = std::remainder(d, L);
  }
  const double r = 1.0 - std::abs(d) / h;
  if (mesh.periodic() && mesh.n_cells() == 1) return 1.0;
  return r > 0.0 ? r : 0.0;
}

}  // namespace phc
