#pragma once

#include <Eigen/SparseCore>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "phc/basis.hpp"
#include "phc/quadrature.hpp"

namespace phc {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  double value;
};

/// Sums duplicate entries in insertion order, so the result does not depend on
/// Eigen's internal accumulation order. Two calls whose entries differ only by a
/// row/column swap produce exact transposes of each other.
SparseMatrix from_entries(Eigen::Index rows, Eigen::Index cols, std::vector<Entry> entries);

/// M_ij = int phi_i phi_j. Requires quad.degree >= 2 * polynomial degree (ConfigError otherwise).
SparseMatrix assemble_mass(const BasisSet& basis, const QuadratureRule& quad);

using CoefficientField = std::function<double(std::span<const double>)>;

/// K_ij = int lambda grad phi_i . grad phi_j. Throws MaterialError if lambda <= 0 at any
/// quadrature point.
SparseMatrix assemble_stiffness(const BasisSet& basis, const CoefficientField& lambda,
                                const QuadratureRule& quad = quadrature(3));

/// Surface basis functions integrated over Gamma_2:
/// collapsed(i, j)(x1) = chi_i(x1) * int eta_j dx2.
struct CollapsedBasis {
  IntervalMesh gamma1;
  std::vector<double> eta_integrals;  ///< int eta_j over Gamma_2, one per azimuthal node

  std::size_t n_azimuthal() const noexcept { return eta_integrals.size(); }
  double evaluate(std::size_t surface_dof, double x1) const noexcept;
};

/// Throws UnsupportedBasisError unless `surface` is a Q1 tensor surface basis.
CollapsedBasis collapse_basis(const BasisSet& surface, const QuadratureRule& quad);

/// Interconnection matrices of the discretized mixed-dimensional coupling.
struct CouplingOperators {
  SparseMatrix m_psi;  ///< surface mass on Gamma
  SparseMatrix m_chi;  ///< line mass on Gamma_1
  SparseMatrix d_chi;  ///< n_chi x n_psi
  SparseMatrix d_psi;  ///< n_psi x n_chi, transpose of d_chi
};

/// Assembles M_psi, M_chi, D_chi and D_psi. D_chi and D_psi come out of one
/// quadrature loop, so D_psi == D_chi^T bit for bit.
/// Throws CouplingError when the line mesh is not node-identical to Gamma_1.
CouplingOperators assemble_coupling(const BasisSet& surface, const BasisSet& line,
                                    const QuadratureRule& quad);

/// Coordinate text dump, one "row col value" line per stored entry, sorted by (row, col).
void write_coordinate(std::ostream& os, const SparseMatrix& m);

/// Largest |A_ij - B_ij| over the union of both sparsity patterns.
double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace phc
