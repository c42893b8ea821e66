#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid mesh or domain parameters.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid numerical configuration (quadrature degree, solver settings, config file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-physical material parameter or coefficient field.
class MaterialError : public Error {
 public:
  using Error::Error;
};

/// A basis kind that an operation does not support.
class UnsupportedBasisError : public Error {
 public:
  using Error::Error;
};

/// Meshes or fields that cannot be coupled (size or node mismatch).
class CouplingError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant violation during assembly or factorization.
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// A state left the admissible set (T <= 0, phi <= 0).
class StateError : public Error {
 public:
  StateError(std::string field, std::size_t node, double value);

  const std::string& field() const noexcept { return field_; }
  std::size_t node() const noexcept { return node_; }
  double value() const noexcept { return value_; }

 private:
  std::string field_;
  std::size_t node_;
  double value_;
};

/// Newton did not converge inside one time step.
class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, double last_residual, int iterations);

  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

}  // namespace phc
