#pragma once

#include <vector>

namespace phc {

/// Gauss-Legendre rule on the reference interval [0, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;  ///< highest polynomial degree integrated exactly

  std::size_t size() const noexcept { return points.size(); }
};

/// Rule exact for polynomials up to `degree` (uses ceil((degree + 1) / 2) points).
/// Throws ConfigError for degree < 1.
QuadratureRule quadrature(int degree);

}  // namespace phc
