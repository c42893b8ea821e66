#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <cstdint>
#include <memory>

#include "phc/assembly.hpp"
#include "phc/geometry.hpp"
#include "phc/report.hpp"

namespace phc {

/// Coefficients over the Q1 basis of Gamma (an element of L2(Gamma)).
struct SurfaceField {
  Eigen::VectorXd values;
};

/// Coefficients over the P1 basis of Gamma_1 (an element of L2(Gamma_1)).
struct LineField {
  Eigen::VectorXd values;
};

struct EffortFlowPair {
  LineField e1;
  SurfaceField e2;
  LineField f1;
  SurfaceField f2;
};

/// Discrete realization of the integrate-out / embed operator pair on a tensor boundary,
/// together with the structure map J = [[0, -A], [B, 0]].
///
/// A is realized mass-consistently: A u = M_chi^{-1} D_chi u, which is the unique
/// choice making <f, B v>_Gamma == <A f, v>_Gamma1 hold in the discrete inner products.
/// B is nodal: (B v)_(i,j) = v_i. Instances are immutable and cheap to copy.
class DiracCoupling {
 public:
  explicit DiracCoupling(const TensorBoundary& boundary, int quad_degree = 3);

  const TensorBoundary& boundary() const noexcept { return boundary_; }
  const BasisSet& surface_basis() const noexcept { return surface_; }
  const BasisSet& line_basis() const noexcept { return line_; }
  const CouplingOperators& operators() const noexcept { return *ops_; }
  std::size_t n_chi() const noexcept { return line_.n_dofs(); }
  std::size_t n_psi() const noexcept { return surface_.n_dofs(); }
  double measure2() const noexcept { return boundary_.measure2(); }

  LineField integrate_out(const SurfaceField& u) const;
  SurfaceField embed(const LineField& v) const;
  /// f1 = -A e2, f2 = B e1.
  EffortFlowPair apply_J(const LineField& e1, const SurfaceField& e2) const;

  double line_inner(const LineField& a, const LineField& b) const;
  double surface_inner(const SurfaceField& a, const SurfaceField& b) const;
  double line_norm(const LineField& a) const;
  double surface_norm(const SurfaceField& a) const;

  Eigen::VectorXd solve_line_mass(const Eigen::VectorXd& rhs) const;
  Eigen::VectorXd solve_surface_mass(const Eigen::VectorXd& rhs) const;

  /// The nodal embedding as an n_psi x n_chi 0/1 matrix.
  SparseMatrix embedding_matrix() const;

  /// Dense [[0, -A], [B, 0]] acting on (e1, e2); only sensible for small meshes.
  Eigen::MatrixXd structure_matrix() const;

  void require_line(const LineField& v, const char* what) const;
  void require_surface(const SurfaceField& u, const char* what) const;

 private:
  using Cholesky = Eigen::SimplicialLDLT<SparseMatrix>;

  TensorBoundary boundary_;
  BasisSet surface_;
  BasisSet line_;
  std::shared_ptr<const CouplingOperators> ops_;
  std::shared_ptr<const Cholesky> m_chi_solver_;
  std::shared_ptr<const Cholesky> m_psi_solver_;
};

/// |<f, B v>_Gamma - <A f, v>_Gamma1| <= 1e-11 (1 + |f| |v|) over seeded random pairs.
VerificationReport check_adjointness(const DiracCoupling& coupling, int trials, std::uint64_t seed);

/// Isotropy of the graph of J under the symmetric pairing, plus maximality of the
/// finite-dimensional graph: rank(graph) == n_chi + n_psi == dim(graph^perp).
/// Maximality uses dense factorizations and is skipped above `max_dense_dim` unknowns.
VerificationReport check_dirac_pairing(const DiracCoupling& coupling, int trials, std::uint64_t seed,
                                       std::size_t max_dense_dim = 600);

/// |A u|^2 <= |Gamma_2| |u|^2 + 1e-11 for random u, with equality (1e-10 relative)
/// for azimuthally constant u.
VerificationReport operator_norm_bound_check(const DiracCoupling& coupling, int trials, std::uint64_t seed);

/// D_psi - D_chi^T == 0 bit for bit.
VerificationReport check_transpose(const CouplingOperators& ops);

/// Symmetric pairing <<(e, f), (e', f')>> = <e, f'> + <e', f> with mass-weighted products.
double dirac_pairing(const DiracCoupling& coupling, const EffortFlowPair& a, const EffortFlowPair& b);

}  // namespace phc
