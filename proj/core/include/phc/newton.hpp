#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <vector>

namespace phc {

using ResidualFunction = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& residual)>;

/// Forward-difference Jacobian with column grouping (greedy distance-2 coloring):
/// columns that never share a row are perturbed together.
class ColoredJacobian {
 public:
  /// `row_columns[i]` lists every column residual row i may depend on.
  ColoredJacobian(Eigen::Index n, const std::vector<std::vector<Eigen::Index>>& row_columns);

  Eigen::Index size() const noexcept { return n_; }
  int n_colors() const noexcept { return static_cast<int>(groups_.size()); }

  Eigen::SparseMatrix<double> evaluate(const ResidualFunction& f, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& r0, double rel_step) const;

 private:
  Eigen::Index n_;
  std::vector<std::vector<Eigen::Index>> col_rows_;
  std::vector<std::vector<Eigen::Index>> groups_;
};

struct NewtonOptions {
  double tol = 1e-12;      ///< on the max-norm of the residual
  int max_iters = 20;      ///< residual evaluations allowed
  double fd_step = 1e-7;   ///< relative forward-difference step
};

struct NewtonResult {
  Eigen::VectorXd x;
  int iterations = 0;      ///< residual evaluations, the initial one included
  int jacobians = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Newton with Jacobian reuse: the Jacobian is refreshed only when an update
/// contracts the residual by less than a factor 10. Never throws on non-convergence;
/// the caller inspects `converged`.
NewtonResult newton_solve(const ResidualFunction& f, Eigen::VectorXd x0, const ColoredJacobian& jacobian,
                          const NewtonOptions& options);

}  // namespace phc
