#include "phc/dirac.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "phc/errors.hpp"
#include "phc/random.hpp"

namespace phc {

namespace {

constexpr double kStructuralTol = 1e-11;
constexpr double kQuadratureTol = 1e-10;

}  // namespace

DiracCoupling::DiracCoupling(const TensorBoundary& boundary, int quad_degree)
    : boundary_(boundary),
      surface_(BasisSet::surface(boundary)),
      line_(BasisSet::interval(boundary.gamma1())) {
  const auto quad = quadrature(quad_degree);
  ops_ = std::make_shared<const CouplingOperators>(assemble_coupling(surface_, line_, quad));
  auto chi = std::make_shared<Cholesky>(ops_->m_chi);
  auto psi = std::make_shared<Cholesky>(ops_->m_psi);
  if (chi->info() != Eigen::Success || psi->info() != Eigen::Success) {
    throw AssemblyError("mass matrix factorization failed on a valid mesh");
  }
  m_chi_solver_ = std::move(chi);
  m_psi_solver_ = std::move(psi);
}

void DiracCoupling::require_line(const LineField& v, const char* what) const {
  if (static_cast<std::size_t>(v.values.size()) != n_chi()) {
    throw CouplingError(std::string(what) + ": line field has " + std::to_string(v.values.size()) +
                        " coefficients, Gamma_1 basis has " + std::to_string(n_chi()));
  }
}

void DiracCoupling::require_surface(const SurfaceField& u, const char* what) const {
  if (static_cast<std::size_t>(u.values.size()) != n_psi()) {
    throw CouplingError(std::string(what) + ": surface field has " + std::to_string(u.values.size()) +
                        " coefficients, Gamma basis has " + std::to_string(n_psi()));
  }
}

Eigen::VectorXd DiracCoupling::solve_line_mass(const Eigen::VectorXd& rhs) const {
  return m_chi_solver_->solve(rhs);
}

Eigen::VectorXd DiracCoupling::solve_surface_mass(const Eigen::VectorXd& rhs) const {
  return m_psi_solver_->solve(rhs);
}

LineField DiracCoupling::integrate_out(const SurfaceField& u) const {
  require_surface(u, "integrate_out");
  return LineField{solve_line_mass(ops_->d_chi * u.values)};
}

SurfaceField DiracCoupling::embed(const LineField& v) const {
  require_line(v, "embed");
  const std::size_t n2 = boundary_.gamma2().n_nodes();
  SurfaceField out{Eigen::VectorXd(static_cast<Eigen::Index>(n_psi()))};
  for (std::size_t i = 0; i < n_chi(); ++i)
    for (std::size_t j = 0; j < n2; ++j)
      out.values[static_cast<Eigen::Index>(i * n2 + j)] = v.values[static_cast<Eigen::Index>(i)];
  return out;
}

EffortFlowPair DiracCoupling::apply_J(const LineField& e1, const SurfaceField& e2) const {
  require_line(e1, "apply_J");
  require_surface(e2, "apply_J");
  EffortFlowPair p{e1, e2, integrate_out(e2), embed(e1)};
  p.f1.values = -p.f1.values;
  return p;
}

double DiracCoupling::line_inner(const LineField& a, const LineField& b) const {
  require_line(a, "line_inner");
  require_line(b, "line_inner");
  return a.values.dot(ops_->m_chi * b.values);
}

double DiracCoupling::surface_inner(const SurfaceField& a, const SurfaceField& b) const {
  require_surface(a, "surface_inner");
  require_surface(b, "surface_inner");
  return a.values.dot(ops_->m_psi * b.values);
}

double DiracCoupling::line_norm(const LineField& a) const { return std::sqrt(std::max(0.0, line_inner(a, a))); }

double DiracCoupling::surface_norm(const SurfaceField& a) const {
  return std::sqrt(std::max(0.0, surface_inner(a, a)));
}

SparseMatrix DiracCoupling::embedding_matrix() const {
  const std::size_t n2 = boundary_.gamma2().n_nodes();
  std::vector<Entry> e;
  for (std::size_t i = 0; i < n_chi(); ++i)
    for (std::size_t j = 0; j < n2; ++j)
      e.push_back({static_cast<Eigen::Index>(i * n2 + j), static_cast<Eigen::Index>(i), 1.0});
  return from_entries(static_cast<Eigen::Index>(n_psi()), static_cast<Eigen::Index>(n_chi()), std::move(e));
}

Eigen::MatrixXd DiracCoupling::structure_matrix() const {
  const auto nc = static_cast<Eigen::Index>(n_chi());
  const auto np = static_cast<Eigen::Index>(n_psi());
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(nc + np, nc + np);
  const Eigen::MatrixXd d_chi(ops_->d_chi);
  j.block(0, nc, nc, np) = -m_chi_solver_->solve(d_chi);
  j.block(nc, 0, np, nc) = Eigen::MatrixXd(embedding_matrix());
  return j;
}

double dirac_pairing(const DiracCoupling& c, const EffortFlowPair& a, const EffortFlowPair& b) {
  return c.line_inner(a.e1, b.f1) + c.surface_inner(a.e2, b.f2) + c.line_inner(b.e1, a.f1) +
         c.surface_inner(b.e2, a.f2);
}

VerificationReport check_adjointness(const DiracCoupling& coupling, int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("check_adjointness: trials must be >= 1");
  VerificationReport r{"adjointness A = B*", true, trials, 0.0, kStructuralTol, {}};
  FieldGenerator gen(seed);
  double worst_scaled = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SurfaceField f{gen.vector(static_cast<Eigen::Index>(coupling.n_psi()))};
    const LineField v{gen.vector(static_cast<Eigen::Index>(coupling.n_chi()))};
    const double lhs = coupling.surface_inner(f, coupling.embed(v));
    const double rhs = coupling.line_inner(coupling.integrate_out(f), v);
    const double res = std::abs(lhs - rhs);
    const double bound = kStructuralTol * (1.0 + coupling.surface_norm(f) * coupling.line_norm(v));
    r.max_residual = std::max(r.max_residual, res);
    worst_scaled = std::max(worst_scaled, res / bound);
    if (res > bound) r.passed = false;
  }
  r.add("worst_residual_over_bound", worst_scaled);
  r.add("seed", std::to_string(seed));
  return r;
}

VerificationReport check_dirac_pairing(const DiracCoupling& coupling, int trials, std::uint64_t seed,
                                       std::size_t max_dense_dim) {
  if (trials < 1) throw ConfigError("check_dirac_pairing: trials must be >= 1");
  VerificationReport r{"Dirac isotropy and maximality", true, trials, 0.0, kStructuralTol, {}};
  FieldGenerator gen(seed);
  const auto nc = static_cast<Eigen::Index>(coupling.n_chi());
  const auto np = static_cast<Eigen::Index>(coupling.n_psi());
  for (int t = 0; t < trials; ++t) {
    const auto a = coupling.apply_J(LineField{gen.vector(nc)}, SurfaceField{gen.vector(np)});
    const auto b = coupling.apply_J(LineField{gen.vector(nc)}, SurfaceField{gen.vector(np)});
    const double res = std::max(std::abs(dirac_pairing(coupling, a, b)), std::abs(dirac_pairing(coupling, a, a)));
    r.max_residual = std::max(r.max_residual, res);
  }
  if (r.max_residual > kStructuralTol) r.passed = false;

  const Eigen::Index n = nc + np;
  if (static_cast<std::size_t>(n) > max_dense_dim) {
    r.add("maximality", "skipped (dimension " + std::to_string(n) + " above dense limit)");
    return r;
  }
  // Graph basis G = [I; J] and pairing matrix [[0, W], [W, 0]] with W = diag(M_chi, M_psi).
  const Eigen::MatrixXd j = coupling.structure_matrix();
  Eigen::MatrixXd g(2 * n, n);
  g.topRows(n) = Eigen::MatrixXd::Identity(n, n);
  g.bottomRows(n) = j;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  w.topLeftCorner(nc, nc) = Eigen::MatrixXd(coupling.operators().m_chi);
  w.bottomRightCorner(np, np) = Eigen::MatrixXd(coupling.operators().m_psi);
  Eigen::MatrixXd pairing = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  pairing.topRightCorner(n, n) = w;
  pairing.bottomLeftCorner(n, n) = w;

  const Eigen::MatrixXd constraints = g.transpose() * pairing;  // rows annihilate D^perp
  const Eigen::Index graph_rank = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(g).rank();
  const Eigen::Index perp_dim = 2 * n - Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(constraints).rank();
  const double isotropy = (constraints * g).cwiseAbs().maxCoeff();

  r.add("graph_rank", std::to_string(graph_rank));
  r.add("perp_dimension", std::to_string(perp_dim));
  r.add("expected_dimension", std::to_string(n));
  r.add("graph_isotropy_residual", isotropy);
  if (graph_rank != n || perp_dim != n || isotropy > kStructuralTol) r.passed = false;
  return r;
}

VerificationReport operator_norm_bound_check(const DiracCoupling& coupling, int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("operator_norm_bound_check: trials must be >= 1");
  VerificationReport r{"operator bound |Au|^2 <= |Gamma_2| |u|^2", true, trials, 0.0, kStructuralTol, {}};
  FieldGenerator gen(seed);
  const double m2 = coupling.measure2();
  double worst_equality = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const SurfaceField u{gen.vector(static_cast<Eigen::Index>(coupling.n_psi()))};
    const double lhs = std::pow(coupling.line_norm(coupling.integrate_out(u)), 2);
    const double rhs = m2 * std::pow(coupling.surface_norm(u), 2);
    const double violation = lhs - rhs;
    r.max_residual = std::max(r.max_residual, violation);
    min_slack = std::min(min_slack, rhs - lhs);
    if (violation > kStructuralTol) r.passed = false;

    const SurfaceField flat = coupling.embed(LineField{gen.vector(static_cast<Eigen::Index>(coupling.n_chi()))});
    const double lf = std::pow(coupling.line_norm(coupling.integrate_out(flat)), 2);
    const double rf = m2 * std::pow(coupling.surface_norm(flat), 2);
    const double rel = std::abs(lf - rf) / std::max(rf, std::numeric_limits<double>::min());
    worst_equality = std::max(worst_equality, rel);
  }
  if (worst_equality > kQuadratureTol) r.passed = false;
  r.add("max_violation", r.max_residual);
  r.add("min_slack_random", min_slack);
  r.add("max_relative_gap_azimuthally_constant", worst_equality);
  r.add("equality_tolerance", kQuadratureTol);
  return r;
}

VerificationReport check_transpose(const CouplingOperators& ops) {
  VerificationReport r{"transpose identity D_psi = D_chi^T", true, 1, 0.0, 0.0, {}};
  const SparseMatrix dt = ops.d_chi.transpose();
  bool identical = dt.rows() == ops.d_psi.rows() && dt.cols() == ops.d_psi.cols() &&
                   dt.nonZeros() == ops.d_psi.nonZeros();
  if (identical) {
    const SparseMatrix a = dt;  // compressed column-major copy
    for (Eigen::Index k = 0; k < a.outerSize() && identical; ++k) {
      SparseMatrix::InnerIterator ia(a, k);
      SparseMatrix::InnerIterator ib(ops.d_psi, k);
      for (; ia && ib; ++ia, ++ib) {
        if (ia.index() != ib.index() || ia.value() != ib.value()) {
          identical = false;
          r.max_residual = std::max(r.max_residual, std::abs(ia.value() - ib.value()));
        }
      }
      if (ia || ib) identical = false;
    }
  }
  r.passed = identical;
  r.add("nonzeros_d_chi", std::to_string(ops.d_chi.nonZeros()));
  r.add("bitwise_equal", identical ? "true" : "false");
  return r;
}

}  // namespace phc
