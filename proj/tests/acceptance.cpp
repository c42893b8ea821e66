// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "oracle.hpp"
#include "phc/assembly.hpp"
#include "phc/coupling.hpp"
#include "phc/dirac.hpp"
#include "phc/quadrature.hpp"
#include "phc/scenario.hpp"

using namespace phc;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out{false, ""};
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = out.passed && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %-34s %s [%.2fs of %.0fs]\n", pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), secs, limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

DiracCoupling face(int n1, int n2) {
  return DiracCoupling(TensorBoundary(IntervalMesh(0, 1, n1), IntervalMesh(0, 1, n2, true)));
}

Outcome report(const VerificationReport& r) {
  return {r.passed && r.trials == 1000, fmt("max residual %.2e (tol %.0e)", r.max_residual, r.tolerance)};
}

Eigen::MatrixXd mass_oracle(double len, int n, bool periodic) {
  const int nodes = periodic ? n : n + 1;
  Eigen::MatrixXd m(nodes, nodes);
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j)
      m(i, j) = oracle::integrate_cells(
          [&](double x) { return oracle::hat(0, len, n, i, periodic, x) * oracle::hat(0, len, n, j, periodic, x); }, 0,
          len, n);
  return m;
}

}  // namespace

int main() {
  criterion(1, "adjointness A = B*", 5, [] { return report(check_adjointness(face(16, 16), 1000, 1)); });

  criterion(2, "operator bound", 5, [] { return report(operator_norm_bound_check(face(16, 16), 1000, 2)); });

  criterion(3, "Dirac isotropy + maximality", 5, [] {
    const auto iso = check_dirac_pairing(face(16, 16), 1000, 3, 0);
    const auto c = face(4, 6);
    const auto max = check_dirac_pairing(c, 1000, 3);
    const Eigen::MatrixXd j = c.structure_matrix();
    const Eigen::Index n = j.rows();
    Eigen::MatrixXd graph(2 * n, n);
    graph << Eigen::MatrixXd::Identity(n, n), j;
    const auto rank = Eigen::FullPivLU<Eigen::MatrixXd>(graph).rank();
    const bool ok = iso.passed && max.passed && rank == static_cast<Eigen::Index>(c.n_chi() + c.n_psi());
    return Outcome{ok, fmt("pairing %.2e, graph rank %.0f of %.0f", std::max(iso.max_residual, max.max_residual),
                           static_cast<double>(rank), static_cast<double>(c.n_chi() + c.n_psi()))};
  });

  criterion(4, "transpose identity", 2, [] {
    double worst = 0.0;
    for (int n1 : {1, 2, 5, 8, 16, 32})
      for (int n2 : {1, 3, 8, 16, 32}) {
        const auto r = check_transpose(face(n1, n2).operators());
        worst = std::max(worst, r.max_residual);
      }
    return Outcome{worst == 0.0, fmt("max |D_psi - D_chi^T| = %.1e up to 32x32", worst)};
  });

  criterion(5, "coupling power balance", 5, [] { return report(check_power_balance(face(16, 16), 1000, 5)); });

  RunConfig base;
  base.sim.output_every = 0;
  base.scenario = "hot-wall-cooldown";
  EnergyLedger coarse, fine;
  criterion(6, "coupled energy drift (step halving)", 60, [&] {
    coarse = run_scenario(base).result.ledger;
    RunConfig half = base;
    half.sim.dt = base.sim.dt / 2;
    fine = run_scenario(half).result.ledger;
    const double d1 = coarse.final_drift() / base.sim.t_end;
    const double d2 = fine.final_drift() / base.sim.t_end;
    const double ratio = d1 / d2;
    const double worst = std::max(coarse.max_coupling_residual() / coarse.scale, fine.max_coupling_residual() / fine.scale);
    const bool ok = ratio >= 3.0 && ratio <= 5.0 && worst <= 1e-11 && coarse.records.size() == 201;
    return Outcome{ok, fmt("drift/time %.3e -> %.3e, ratio %.3f", d1, d2, ratio) +
                           fmt(", coupling residual %.1e*scale", worst)};
  });

  criterion(7, "entropy monotonicity", 60, [&] {
    const double worst = std::min(coarse.worst_entropy_decrease() / coarse.scale, fine.worst_entropy_decrease() / fine.scale);
    const bool ok = coarse.records.size() == 201 && worst >= -1e-10;
    const double gain = coarse.records.back().s_solid + coarse.records.back().s_fluid -
                        coarse.records.front().s_solid - coarse.records.front().s_fluid;
    return Outcome{ok, fmt("worst step change %.2e*scale, total gain %.4e", worst, gain)};
  });

  criterion(8, "acoustic sanity", 10, [] {
    RunConfig cfg;
    const auto m = measure_acoustic_speed(cfg);
    const double closed = std::sqrt((1.0 + cfg.fluid.r_gas / cfg.fluid.c_v) * cfg.fluid.r_gas * cfg.params.t_cold);
    const double err = std::abs(m.speed - closed) / closed;
    return Outcome{err <= 0.05 && cfg.params.acoustic_cells == 128,
                   fmt("measured %.4f vs %.4f (%.2f%%)", m.speed, closed, 100 * err)};
  });

  criterion(9, "equilibrium fixed point", 10, [] {
    RunConfig cfg;
    cfg.scenario = "equilibrium";
    cfg.sim.output_every = 0;
    auto sc = build_scenario(cfg);
    SystemState s = sc.initial;
    double worst = 0.0;
    int max_iters = 0;
    for (int k = 0; k < 100; ++k) {
      const auto st = sc.simulator.step(s, k * cfg.sim.dt, cfg.sim);
      s = st.state;
      max_iters = std::max(max_iters, st.record.newton_iterations);
    }
    for (std::size_t i = 0; i < s.heat.s.size(); ++i) worst = std::max(worst, std::abs(s.heat.s[i] - sc.initial.heat.s[i]));
    for (std::size_t i = 0; i < s.fluid.phi.size(); ++i) {
      worst = std::max(worst, std::abs(s.fluid.phi[i] - sc.initial.fluid.phi[i]));
      worst = std::max(worst, std::abs(s.fluid.vel[i] - sc.initial.fluid.vel[i]));
      worst = std::max(worst, std::abs(s.fluid.s[i] - sc.initial.fluid.s[i]));
    }
    return Outcome{worst <= 1e-12 && max_iters == 1, fmt("max state change %.1e, newton iterations %.0f", worst, max_iters)};
  });

  criterion(10, "quadrature-oracle regression", 2, [] {
    double worst = 0.0;
    const auto cmp = [&](const SparseMatrix& m, const Eigen::MatrixXd& ref) {
      worst = std::max(worst, (Eigen::MatrixXd(m) - ref).cwiseAbs().maxCoeff());
    };
    cmp(assemble_mass(BasisSet::interval(IntervalMesh(0, 1, 2)), quadrature(2)), mass_oracle(1, 2, false));
    const double two_pi = 2 * std::acos(-1.0);
    cmp(assemble_mass(BasisSet::interval(IntervalMesh(0, two_pi, 4, true)), quadrature(2)), mass_oracle(two_pi, 4, true));
    Eigen::MatrixXd k(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        k(i, j) = oracle::integrate_cells(
            [&](double x) { return oracle::hat_slope(0, 1, 2, i, false, x) * oracle::hat_slope(0, 1, 2, j, false, x); }, 0, 1,
            2);
    cmp(assemble_stiffness(BasisSet::interval(IntervalMesh(0, 1, 2)), [](auto) { return 1.0; }), k);
    const IntervalMesh g1(0, 1, 6), g2(0, 2, 5, true);
    const auto ops = assemble_coupling(BasisSet::surface(TensorBoundary(g1, g2)), BasisSet::interval(g1), quadrature(3));
    const auto m1 = mass_oracle(1, 6, false);
    Eigen::MatrixXd d(7, 35);
    for (int r = 0; r < 7; ++r)
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 5; ++j)
          d(r, i * 5 + j) =
              m1(r, i) * oracle::integrate_cells([&](double x) { return oracle::hat(0, 2, 5, j, true, x); }, 0, 2, 5);
    cmp(ops.d_chi, d);
    return Outcome{worst <= 1e-13, fmt("max entry error %.1e", worst)};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
