#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oracle.hpp"
#include "phc/assembly.hpp"
#include "phc/basis.hpp"
#include "phc/errors.hpp"
#include "phc/quadrature.hpp"
#include "phc/random.hpp"

using namespace phc;

namespace {

Eigen::MatrixXd dense(const SparseMatrix& m) { return Eigen::MatrixXd(m); }

// Entry (i, j) of the 1D mass or stiffness matrix by independent quadrature.
Eigen::MatrixXd mass_oracle_1d(double a, double b, int n, bool periodic) {
  const int nodes = periodic ? n : n + 1;
  Eigen::MatrixXd m(nodes, nodes);
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j)
      m(i, j) = oracle::integrate_cells(
          [&](double x) { return oracle::hat(a, b, n, i, periodic, x) * oracle::hat(a, b, n, j, periodic, x); }, a, b,
          n);
  return m;
}

Eigen::MatrixXd stiffness_oracle_1d(double a, double b, int n) {
  Eigen::MatrixXd k(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      k(i, j) = oracle::integrate_cells(
          [&](double x) { return oracle::hat_slope(a, b, n, i, false, x) * oracle::hat_slope(a, b, n, j, false, x); }, a,
          b, n);
  return k;
}

}  // namespace

TEST_CASE("1D mass on two cells") {
  const auto m = dense(assemble_mass(BasisSet::interval(IntervalMesh(0, 1, 2)), quadrature(2)));
  Eigen::Matrix3d expected;
  expected << 2, 1, 0, 1, 4, 1, 0, 1, 2;
  expected /= 12.0;
  CHECK((m - expected).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((m - mass_oracle_1d(0, 1, 2, false)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("periodic mass on a 2 pi ring") {
  const double len = 2 * std::numbers::pi;
  const auto m = dense(assemble_mass(BasisSet::interval(IntervalMesh(0, len, 4, true)), quadrature(3)));
  const auto ref = mass_oracle_1d(0, len, 4, true);
  const double h = std::numbers::pi / 2;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(m(i, i) - 2 * h / 3) <= 1e-13);
    CHECK(std::abs(m(i, (i + 1) % 4) - h / 6) <= 1e-13);
    CHECK(std::abs(m(i, (i + 2) % 4)) == 0.0);
  }
  CHECK((m - ref).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("mass entries sum to the measure for every basis kind") {
  const auto dom = build_solid_domain(0.5, 2, 3, 0.4, 3, 4, 2);
  const auto q = quadrature(2);
  CHECK(assemble_mass(BasisSet::interval(dom.axial()), q).sum() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(assemble_mass(BasisSet::surface(dom.coupling_face()), q).sum() == doctest::Approx(4.5).epsilon(1e-14));
  CHECK(assemble_mass(BasisSet::volume(dom), q).sum() == doctest::Approx(1.8).epsilon(1e-14));
}

TEST_CASE("mass is symmetric positive definite") {
  const auto m = assemble_mass(BasisSet::surface(TensorBoundary(IntervalMesh(0, 1, 5), IntervalMesh(0, 2, 6, true))),
                               quadrature(3));
  const Eigen::MatrixXd d = dense(m);
  CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("surface mass matches the tensor-product oracle") {
  const IntervalMesh g1(0, 1, 3), g2(0, 2, 4, true);
  const auto m = dense(assemble_mass(BasisSet::surface(TensorBoundary(g1, g2)), quadrature(2)));
  const auto m1 = mass_oracle_1d(0, 1, 3, false);
  const auto m2 = mass_oracle_1d(0, 2, 4, true);
  Eigen::MatrixXd kron(m1.rows() * m2.rows(), m1.cols() * m2.cols());
  for (int i = 0; i < m1.rows(); ++i)
    for (int j = 0; j < m1.cols(); ++j) kron.block(i * m2.rows(), j * m2.cols(), m2.rows(), m2.cols()) = m1(i, j) * m2;
  CHECK((m - kron).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("mass quadrature must be exact for products") {
  CHECK_THROWS_AS(assemble_mass(BasisSet::interval(IntervalMesh(0, 1, 2)), quadrature(1)), ConfigError);
}

TEST_CASE("1D stiffness on two cells") {
  const auto k = dense(assemble_stiffness(BasisSet::interval(IntervalMesh(0, 1, 2)), [](auto) { return 1.0; }));
  Eigen::Matrix3d expected;
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  expected *= 2.0;
  CHECK((k - expected).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((k - stiffness_oracle_1d(0, 1, 2)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("stiffness annihilates constants and rejects non-positive coefficients") {
  const auto dom = build_solid_domain(0, 1, 1, 0.3, 3, 4, 2);
  const auto basis = BasisSet::volume(dom);
  const auto k = assemble_stiffness(basis, [](std::span<const double> x) { return 1.0 + x[0] * x[0]; });
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(basis.n_dofs()));
  CHECK((k * ones).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK_THROWS_AS(assemble_stiffness(basis, [](auto) { return 0.0; }), MaterialError);
  CHECK_THROWS_AS(assemble_stiffness(basis, [](std::span<const double> x) { return x[0] - 0.5; }), MaterialError);
}

TEST_CASE("collapsed basis integrates eta over the ring") {
  const double len = 2 * std::numbers::pi;
  const auto surf = BasisSet::surface(TensorBoundary(IntervalMesh(0, 1, 2), IntervalMesh(0, len, 4, true)));
  const auto c = collapse_basis(surf, quadrature(3));
  REQUIRE(c.n_azimuthal() == 4);
  for (double e : c.eta_integrals) CHECK(std::abs(e - std::numbers::pi / 2) < 1e-13);
  // partition of unity: sum of collapsed functions is |Gamma_2|
  for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    double s = 0.0;
    for (std::size_t d = 0; d < surf.n_dofs(); ++d) s += c.evaluate(d, x);
    CHECK(std::abs(s - len) < 1e-13);
  }
  CHECK_THROWS_AS(collapse_basis(BasisSet::interval(IntervalMesh(0, 1, 2)), quadrature(3)), UnsupportedBasisError);
}

TEST_CASE("D_chi factorizes as line mass times eta integrals") {
  const IntervalMesh g1(0, 1, 5), g2(0, 1.5, 6, true);
  const auto surf = BasisSet::surface(TensorBoundary(g1, g2));
  const auto ops = assemble_coupling(surf, BasisSet::interval(g1), quadrature(3));
  const auto m1 = mass_oracle_1d(0, 1, 5, false);
  Eigen::VectorXd eta(6);
  for (int j = 0; j < 6; ++j)
    eta[j] = oracle::integrate_cells([&](double x) { return oracle::hat(0, 1.5, 6, j, true, x); }, 0, 1.5, 6);
  Eigen::MatrixXd expected(6, 36);
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) expected(k, i * 6 + j) = m1(k, i) * eta[j];
  CHECK((dense(ops.d_chi) - expected).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((dense(ops.m_chi) - m1).cwiseAbs().maxCoeff() <= 1e-13);

  // row sums: |Gamma_2| times the line-mass row sum
  const Eigen::VectorXd rows = dense(ops.d_chi).rowwise().sum();
  const Eigen::VectorXd mrows = m1.rowwise().sum();
  CHECK((rows - 1.5 * mrows).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("D_psi is the exact transpose of D_chi") {
  for (int n : {1, 4, 16, 32}) {
    const IntervalMesh g1(0, 1, n), g2(0, 1, n, true);
    const auto ops = assemble_coupling(BasisSet::surface(TensorBoundary(g1, g2)), BasisSet::interval(g1), quadrature(3));
    const SparseMatrix diff = ops.d_psi - SparseMatrix(ops.d_chi.transpose());
    CHECK(diff.norm() == 0.0);
  }
}

TEST_CASE("y^T D_chi v equals its defining integral") {
  const IntervalMesh g1(0, 2, 4), g2(0, 1, 3, true);
  const auto surf = BasisSet::surface(TensorBoundary(g1, g2));
  const auto ops = assemble_coupling(surf, BasisSet::interval(g1), quadrature(3));
  FieldGenerator gen(11);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd y = gen.vector(5), v = gen.vector(15);
    const double direct = y.dot(ops.d_chi * v);
    const double integral = oracle::integrate_cells(
        [&](double x1) {
          double yx = 0.0, vx = 0.0;
          for (int i = 0; i < 5; ++i) yx += y[i] * oracle::hat(0, 2, 4, i, false, x1);
          for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 3; ++j) {
              const double eta =
                  oracle::integrate_cells([&](double x2) { return oracle::hat(0, 1, 3, j, true, x2); }, 0, 1, 3, 2);
              vx += v[i * 3 + j] * oracle::hat(0, 2, 4, i, false, x1) * eta;
            }
          return yx * vx;
        },
        0, 2, 4, 4);
    CHECK(std::abs(direct - integral) <= 1e-12);
  }
}

TEST_CASE("mismatched meshes are a coupling incompatibility") {
  const auto surf = BasisSet::surface(TensorBoundary(IntervalMesh(0, 1, 4), IntervalMesh(0, 1, 4, true)));
  try {
    assemble_coupling(surf, BasisSet::interval(IntervalMesh(0, 1, 5)), quadrature(3));
    FAIL("expected CouplingError");
  } catch (const CouplingError& e) {
    CHECK(std::string(e.what()).find("coupling-incompatibility") != std::string::npos);
  }
}

TEST_CASE("from_entries sums duplicates and dumps sorted coordinates") {
  const auto m = from_entries(2, 2, {{1, 0, 1.0}, {0, 1, 2.0}, {1, 0, 0.5}});
  CHECK(m.coeff(1, 0) == 1.5);
  std::ostringstream os;
  write_coordinate(os, m);
  CHECK(os.str() == "0 1 2\n1 0 1.5\n");
  CHECK(max_abs_difference(m, from_entries(2, 2, {{1, 0, 1.5}, {0, 1, 2.0}})) == 0.0);
}

TEST_CASE("basis evaluation reproduces linear functions") {
  const auto dom = build_solid_domain(0, 2, 1, 0.5, 4, 4, 2);
  const auto basis = BasisSet::volume(dom);
  std::vector<double> c(basis.n_dofs());
  for (std::size_t d = 0; d < c.size(); ++d) {
    const auto x = basis.dof_coordinates(d);
    c[d] = 1.0 + 2.0 * x[0] - 3.0 * x[2];
  }
  for (auto x : {std::array<double, 3>{0.3, 0.2, 0.1}, std::array<double, 3>{1.9, 0.5, 0.45}}) {
    CHECK(basis.evaluate(c, x) == doctest::Approx(1.0 + 2.0 * x[0] - 3.0 * x[2]).epsilon(1e-13));
  }
  CHECK(hat_value(IntervalMesh(0, 1, 4, true), 0, 0.9) == doctest::Approx(0.6));
}
