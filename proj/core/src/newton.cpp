#include "phc/newton.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "phc/errors.hpp"

namespace phc {

ColoredJacobian::ColoredJacobian(Eigen::Index n, const std::vector<std::vector<Eigen::Index>>& row_columns)
    : n_(n), col_rows_(static_cast<std::size_t>(n)) {
  if (static_cast<Eigen::Index>(row_columns.size()) != n) throw AssemblyError("Jacobian pattern size mismatch");
  for (std::size_t r = 0; r < row_columns.size(); ++r) {
    for (auto c : row_columns[r]) {
      if (c < 0 || c >= n) throw AssemblyError("Jacobian pattern column out of range");
      col_rows_[static_cast<std::size_t>(c)].push_back(static_cast<Eigen::Index>(r));
    }
  }
  for (auto& rows : col_rows_) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  }

  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<int> mark;
  for (Eigen::Index c = 0; c < n; ++c) {
    // colors already used by columns that share a row with c
    for (auto r : col_rows_[static_cast<std::size_t>(c)]) {
      for (auto other : row_columns[static_cast<std::size_t>(r)]) {
        const int k = color[static_cast<std::size_t>(other)];
        if (k >= 0) {
          if (static_cast<std::size_t>(k) >= mark.size()) mark.resize(static_cast<std::size_t>(k) + 1, -1);
          mark[static_cast<std::size_t>(k)] = static_cast<int>(c);
        }
      }
    }
    int k = 0;
    while (static_cast<std::size_t>(k) < mark.size() && mark[static_cast<std::size_t>(k)] == static_cast<int>(c)) ++k;
    color[static_cast<std::size_t>(c)] = k;
    if (static_cast<std::size_t>(k) >= groups_.size()) groups_.resize(static_cast<std::size_t>(k) + 1);
    groups_[static_cast<std::size_t>(k)].push_back(c);
  }
}

Eigen::SparseMatrix<double> ColoredJacobian::evaluate(const ResidualFunction& f, const Eigen::VectorXd& x,
                                                      const Eigen::VectorXd& r0, double rel_step) const {
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd xp = x;
  Eigen::VectorXd rp(r0.size());
  std::vector<double> steps(static_cast<std::size_t>(n_));
  for (const auto& group : groups_) {
    for (auto c : group) {
      const double h = rel_step * std::max(1.0, std::abs(x[c]));
      xp[c] = x[c] + h;
      steps[static_cast<std::size_t>(c)] = xp[c] - x[c];
    }
    f(xp, rp);
    for (auto c : group) {
      const double h = steps[static_cast<std::size_t>(c)];
      for (auto r : col_rows_[static_cast<std::size_t>(c)]) triplets.emplace_back(r, c, (rp[r] - r0[r]) / h);
      xp[c] = x[c];
    }
  }
  Eigen::SparseMatrix<double> j(r0.size(), n_);
  j.setFromTriplets(triplets.begin(), triplets.end());
  j.makeCompressed();
  return j;
}

NewtonResult newton_solve(const ResidualFunction& f, Eigen::VectorXd x0, const ColoredJacobian& jacobian,
                          const NewtonOptions& options) {
  NewtonResult out;
  out.x = std::move(x0);
  Eigen::VectorXd r(out.x.size());
  f(out.x, r);
  out.iterations = 1;
  double norm = r.lpNorm<Eigen::Infinity>();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool refresh = true;
  while (std::isfinite(norm) && norm > options.tol && out.iterations < options.max_iters) {
    if (refresh) {
      const auto j = jacobian.evaluate(f, out.x, r, options.fd_step);
      lu.compute(j);
      ++out.jacobians;
      if (lu.info() != Eigen::Success) break;
    }
    const Eigen::VectorXd dx = lu.solve(-r);
    if (!dx.allFinite()) break;
    out.x += dx;
    f(out.x, r);
    ++out.iterations;
    const double next = r.lpNorm<Eigen::Infinity>();
    refresh = !(next < 0.1 * norm);
    norm = next;
  }
  out.residual = norm;
  out.converged = std::isfinite(norm) && norm <= options.tol;
  return out;
}

}  // namespace phc
