#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace phc {

/// Reproducible random numbers for verification trials: std::mt19937_64 with the
/// top 53 bits of each draw mapped to [-1, 1). The mapping is explicit, so the
/// sequence is the same for every standard library.
class FieldGenerator {
 public:
  explicit FieldGenerator(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-52 - 1.0; }
  double uniform(double lo, double hi) { return lo + 0.5 * (uniform() + 1.0) * (hi - lo); }

  Eigen::VectorXd vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace phc
