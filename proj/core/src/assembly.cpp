#include "phc/assembly.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "phc/errors.hpp"

namespace phc {

namespace {

// Tensor-product quadrature on [0,1]^dim: points flattened, weights multiplied.
struct TensorRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

TensorRule tensor_rule(const QuadratureRule& q, int dim) {
  TensorRule r;
  const std::size_t n = q.size();
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= n;
  r.points.reserve(total);
  r.weights.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::array<double, 3> p{0.0, 0.0, 0.0};
    double w = 1.0;
    std::size_t rest = k;
    for (int d = 0; d < dim; ++d) {
      const std::size_t i = rest % n;
      rest /= n;
      p[static_cast<std::size_t>(d)] = q.points[i];
      w *= q.weights[i];
    }
    r.points.push_back(p);
    r.weights.push_back(w);
  }
  return r;
}

void require_degree(const BasisSet& basis, const QuadratureRule& quad, int needed, const char* what) {
  if (quad.degree < needed) {
    std::ostringstream os;
    os << what << ": quadrature degree " << quad.degree << " is below the required "
       << needed << " for polynomial degree " << basis.polynomial_degree();
    throw ConfigError(os.str());
  }
}

std::string describe(const IntervalMesh& m) {
  std::ostringstream os;
  os << "[" << m.start() << ", " << m.end() << "] with " << m.n_cells() << " cells"
     << (m.periodic() ? " (periodic)" : "");
  return os.str();
}

}  // namespace

SparseMatrix from_entries(Eigen::Index rows, Eigen::Index cols, std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Eigen::Triplet<double>> unique;
  unique.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size();) {
    double sum = 0.0;
    std::size_t l = k;
    while (l < entries.size() && entries[l].row == entries[k].row && entries[l].col == entries[k].col) {
      sum += entries[l].value;
      ++l;
    }
    unique.emplace_back(entries[k].row, entries[k].col, sum);
    k = l;
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(unique.begin(), unique.end());
  m.makeCompressed();
  return m;
}

SparseMatrix assemble_mass(const BasisSet& basis, const QuadratureRule& quad) {
  require_degree(basis, quad, 2 * basis.polynomial_degree(), "assemble_mass");
  const int dim = basis.dim();
  const int nloc = basis.dofs_per_cell();
  const auto rule = tensor_rule(quad, dim);
  const double jac = basis.cell_measure();

  // Uniform cells share one local matrix.
  std::vector<double> local(static_cast<std::size_t>(nloc * nloc), 0.0);
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const std::span<const double> xi(rule.points[q].data(), static_cast<std::size_t>(dim));
    const double w = rule.weights[q] * jac;
    for (int a = 0; a < nloc; ++a) {
      const double va = basis.shape_value(a, xi);
      for (int b = 0; b < nloc; ++b) {
        local[static_cast<std::size_t>(a * nloc + b)] += w * (va * basis.shape_value(b, xi));
      }
    }
  }

  std::vector<Entry> entries;
  entries.reserve(basis.n_cells() * static_cast<std::size_t>(nloc * nloc));
  for (std::size_t c = 0; c < basis.n_cells(); ++c) {
    const auto dofs = basis.cell_dofs(c);
    for (int a = 0; a < nloc; ++a)
      for (int b = 0; b < nloc; ++b)
        entries.push_back({static_cast<Eigen::Index>(dofs[static_cast<std::size_t>(a)]),
                           static_cast<Eigen::Index>(dofs[static_cast<std::size_t>(b)]),
                           local[static_cast<std::size_t>(a * nloc + b)]});
  }
  const auto n = static_cast<Eigen::Index>(basis.n_dofs());
  return from_entries(n, n, std::move(entries));
}

SparseMatrix assemble_stiffness(const BasisSet& basis, const CoefficientField& lambda,
                                const QuadratureRule& quad) {
  // gradients are degree 0 per direction, the products degree 2 in the transverse directions
  require_degree(basis, quad, 2 * basis.polynomial_degree(), "assemble_stiffness");
  const int dim = basis.dim();
  const int nloc = basis.dofs_per_cell();
  const auto rule = tensor_rule(quad, dim);
  const auto h = basis.cell_widths();
  const double jac = basis.cell_measure();

  std::vector<Entry> entries;
  entries.reserve(basis.n_cells() * static_cast<std::size_t>(nloc * nloc));
  std::vector<double> local(static_cast<std::size_t>(nloc * nloc));
  for (std::size_t c = 0; c < basis.n_cells(); ++c) {
    std::fill(local.begin(), local.end(), 0.0);
    const auto origin = basis.cell_origin(c);
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const std::span<const double> xi(rule.points[q].data(), static_cast<std::size_t>(dim));
      std::array<double, 3> x{0.0, 0.0, 0.0};
      for (int d = 0; d < dim; ++d) x[static_cast<std::size_t>(d)] = origin[static_cast<std::size_t>(d)] + h[static_cast<std::size_t>(d)] * xi[static_cast<std::size_t>(d)];
      const double lam = lambda(std::span<const double>(x.data(), static_cast<std::size_t>(dim)));
      if (!(lam > 0.0)) {
        std::ostringstream os;
        os << "stiffness coefficient must be positive, got " << lam << " in cell " << c;
        throw MaterialError(os.str());
      }
      const double w = rule.weights[q] * jac * lam;
      for (int a = 0; a < nloc; ++a) {
        const auto ga = basis.shape_gradient(a, xi);
        for (int b = 0; b < nloc; ++b) {
          const auto gb = basis.shape_gradient(b, xi);
          double dot = 0.0;
          for (int d = 0; d < dim; ++d) dot += ga[static_cast<std::size_t>(d)] * gb[static_cast<std::size_t>(d)];
          local[static_cast<std::size_t>(a * nloc + b)] += w * dot;
        }
      }
    }
    const auto dofs = basis.cell_dofs(c);
    for (int a = 0; a < nloc; ++a)
      for (int b = 0; b < nloc; ++b)
        entries.push_back({static_cast<Eigen::Index>(dofs[static_cast<std::size_t>(a)]),
                           static_cast<Eigen::Index>(dofs[static_cast<std::size_t>(b)]),
                           local[static_cast<std::size_t>(a * nloc + b)]});
  }
  const auto n = static_cast<Eigen::Index>(basis.n_dofs());
  return from_entries(n, n, std::move(entries));
}

double CollapsedBasis::evaluate(std::size_t surface_dof, double x1) const noexcept {
  const std::size_t n2 = n_azimuthal();
  return hat_value(gamma1, surface_dof / n2, x1) * eta_integrals[surface_dof % n2];
}

CollapsedBasis collapse_basis(const BasisSet& surface, const QuadratureRule& quad) {
  if (surface.kind() != BasisKind::q1_surface) {
    throw UnsupportedBasisError("collapse_basis needs a tensor-structured Q1 surface basis");
  }
  const IntervalMesh& g2 = surface.factor(1);
  if (!(g2.length() > 0.0)) throw DomainError("Gamma_2 has non-positive measure");
  const auto eta = BasisSet::interval(g2);
  CollapsedBasis out{surface.factor(0), std::vector<double>(g2.n_nodes(), 0.0)};
  const double h = g2.cell_width();
  for (std::size_t c = 0; c < eta.n_cells(); ++c) {
    const auto dofs = eta.cell_dofs(c);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double xi = quad.points[q];
      const double w = quad.weights[q] * h;
      out.eta_integrals[dofs[0]] += w * (1.0 - xi);
      out.eta_integrals[dofs[1]] += w * xi;
    }
  }
  return out;
}

CouplingOperators assemble_coupling(const BasisSet& surface, const BasisSet& line,
                                    const QuadratureRule& quad) {
  if (line.kind() != BasisKind::p1_interval) {
    throw UnsupportedBasisError("assemble_coupling needs a P1 interval basis on Gamma_1");
  }
  const auto collapsed = collapse_basis(surface, quad);
  if (!surface.factor(0).matches(line.factor(0))) {
    throw CouplingError("coupling-incompatibility: surface Gamma_1 " + describe(surface.factor(0)) +
                        " differs from line mesh " + describe(line.factor(0)));
  }
  require_degree(line, quad, 2 * line.polynomial_degree(), "assemble_coupling");

  CouplingOperators ops;
  ops.m_psi = assemble_mass(surface, quad);
  ops.m_chi = assemble_mass(line, quad);

  const std::size_t n2 = collapsed.n_azimuthal();
  const double h = line.factor(0).cell_width();
  std::vector<Entry> d_chi;
  std::vector<Entry> d_psi;
  for (std::size_t c = 0; c < line.n_cells(); ++c) {
    const auto dofs = line.cell_dofs(c);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double xi = quad.points[q];
      const double w = quad.weights[q] * h;
      const double chi[2] = {1.0 - xi, xi};
      for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i) {
          for (std::size_t j = 0; j < n2; ++j) {
            const double collapsed_value = chi[i] * collapsed.eta_integrals[j];
            const double v = w * (chi[k] * collapsed_value);
            const auto row = static_cast<Eigen::Index>(dofs[static_cast<std::size_t>(k)]);
            const auto col = static_cast<Eigen::Index>(dofs[static_cast<std::size_t>(i)] * n2 + j);
            d_chi.push_back({row, col, v});
            d_psi.push_back({col, row, v});
          }
        }
      }
    }
  }
  const auto n_chi = static_cast<Eigen::Index>(line.n_dofs());
  const auto n_psi = static_cast<Eigen::Index>(surface.n_dofs());
  ops.d_chi = from_entries(n_chi, n_psi, std::move(d_chi));
  ops.d_psi = from_entries(n_psi, n_chi, std::move(d_psi));
  return ops;
}

void write_coordinate(std::ostream& os, const SparseMatrix& m) {
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Eigen::Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) entries.push_back({it.row(), it.col(), it.value()});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  const auto old = os.precision(17);
  for (const auto& e : entries) os << e.row << ' ' << e.col << ' ' << e.value << '\n';
  os.precision(old);
}

double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw CouplingError("max_abs_difference: shape mismatch");
  }
  const SparseMatrix d = a - b;
  double m = 0.0;
  for (Eigen::Index k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

}  // namespace phc
