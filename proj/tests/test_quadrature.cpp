#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracle.hpp"
#include "phc/errors.hpp"
#include "phc/quadrature.hpp"

using phc::quadrature;

TEST_CASE("degree 1 is the midpoint rule") {
  const auto q = quadrature(1);
  REQUIRE(q.size() == 1);
  CHECK(q.points[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("degree 3 uses two points and integrates cubics") {
  const auto q = quadrature(3);
  REQUIRE(q.size() == 2);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i], 3);
  CHECK(std::abs(s - 0.25) < 1e-15);
}

TEST_CASE("x^4 with the degree-5 rule") {
  const auto q = quadrature(5);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i], 4);
  CHECK(std::abs(s - 0.2) < 1e-14);
}

TEST_CASE("every degree integrates its monomials exactly") {
  for (int degree = 1; degree <= 21; ++degree) {
    const auto q = quadrature(degree);
    CHECK(q.degree >= degree);
    CHECK(std::accumulate(q.weights.begin(), q.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= degree; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i], k);
      CHECK(std::abs(s - 1.0 / (k + 1)) < 1e-14);
    }
  }
}

TEST_CASE("nodes agree with the Golub-Welsch reference") {
  for (int n = 1; n <= 8; ++n) {
    const auto q = quadrature(2 * n - 1);
    const auto ref = oracle::gauss(n);
    REQUIRE(q.size() == static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(q.points[static_cast<std::size_t>(i)] - ref.x[static_cast<std::size_t>(i)]) < 1e-14);
      CHECK(std::abs(q.weights[static_cast<std::size_t>(i)] - ref.w[static_cast<std::size_t>(i)]) < 1e-14);
    }
  }
}

TEST_CASE("degree below one is rejected") {
  CHECK_THROWS_AS(quadrature(0), phc::ConfigError);
  CHECK_THROWS_AS(quadrature(-3), phc::ConfigError);
}
