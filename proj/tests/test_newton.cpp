#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "phc/errors.hpp"
#include "phc/newton.hpp"

using namespace phc;

namespace {

// Tridiagonal nonlinear system r_i = x_i^3 + x_i - x_{i-1} - x_{i+1} / 2 - b_i
ResidualFunction tridiagonal(Eigen::Index n) {
  return [n](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double left = i > 0 ? x[i - 1] : 0.0;
      const double right = i + 1 < n ? x[i + 1] : 0.0;
      r[i] = x[i] * x[i] * x[i] + 2.0 * x[i] - left - 0.5 * right - 1.0;
    }
  };
}

std::vector<std::vector<Eigen::Index>> band(Eigen::Index n) {
  std::vector<std::vector<Eigen::Index>> p(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = std::max<Eigen::Index>(0, i - 1); j <= std::min(n - 1, i + 1); ++j)
      p[static_cast<std::size_t>(i)].push_back(j);
  return p;
}

}  // namespace

TEST_CASE("coloring groups a tridiagonal pattern into three colors") {
  const ColoredJacobian jac(30, band(30));
  CHECK(jac.n_colors() == 3);
}

TEST_CASE("colored jacobian matches the analytic one") {
  const Eigen::Index n = 12;
  const auto f = tridiagonal(n);
  const ColoredJacobian jac(n, band(n));
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.2, 1.4);
  Eigen::VectorXd r0(n);
  f(x, r0);
  const Eigen::MatrixXd j = Eigen::MatrixXd(jac.evaluate(f, x, r0, 1e-7));
  Eigen::MatrixXd exact = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    exact(i, i) = 3 * x[i] * x[i] + 2.0;
    if (i > 0) exact(i, i - 1) = -1.0;
    if (i + 1 < n) exact(i, i + 1) = -0.5;
  }
  CHECK((j - exact).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("newton converges quadratically enough and counts evaluations") {
  const Eigen::Index n = 20;
  const auto f = tridiagonal(n);
  const ColoredJacobian jac(n, band(n));
  const auto res = newton_solve(f, Eigen::VectorXd::Zero(n), jac, NewtonOptions{});
  REQUIRE(res.converged);
  Eigen::VectorXd r(n);
  f(res.x, r);
  CHECK(r.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(res.iterations < 15);
  CHECK(res.jacobians >= 1);
}

TEST_CASE("a root at the start costs one evaluation and no jacobian") {
  const auto f = [](const Eigen::VectorXd& x, Eigen::VectorXd& r) { r = x; };
  const ColoredJacobian jac(3, band(3));
  const auto res = newton_solve(f, Eigen::VectorXd::Zero(3), jac, NewtonOptions{});
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(res.jacobians == 0);
}

TEST_CASE("non-convergence is reported, not thrown") {
  // r = x^2 + 1 has no real root
  const auto f = [](const Eigen::VectorXd& x, Eigen::VectorXd& r) { r[0] = x[0] * x[0] + 1.0; };
  const ColoredJacobian jac(1, {{0}});
  const auto res = newton_solve(f, Eigen::VectorXd::Constant(1, 0.5), jac, NewtonOptions{1e-12, 6, 1e-7});
  CHECK_FALSE(res.converged);
  CHECK(res.iterations <= 6);
  CHECK(res.residual >= 1.0);
}

TEST_CASE("pattern validation") {
  CHECK_THROWS_AS(ColoredJacobian(2, {{0}}), AssemblyError);
  CHECK_THROWS_AS(ColoredJacobian(2, {{0}, {5}}), AssemblyError);
}
