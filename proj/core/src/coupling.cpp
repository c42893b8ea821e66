#include "phc/coupling.hpp"

#include <cmath>
#include <sstream>

#include "phc/errors.hpp"
#include "phc/quadrature.hpp"
#include "phc/random.hpp"

namespace phc {

CoupledPorts resolve_ports(const SurfaceField& v_out, const LineField& y_out, const DiracCoupling& coupling,
                           double flux_scale) {
  coupling.require_surface(v_out, "resolve_ports");
  coupling.require_line(y_out, "resolve_ports");
  const auto& ops = coupling.operators();
  CoupledPorts p;
  p.v_out = v_out;
  p.y_out = y_out;
  p.u_t.values = coupling.solve_surface_mass(ops.d_psi * y_out.values);
  p.w_in.values = -flux_scale * coupling.solve_line_mass(ops.d_chi * v_out.values);
  if (!p.u_t.values.allFinite() || !p.w_in.values.allFinite()) {
    throw AssemblyError("resolve_ports: mass solve produced non-finite values");
  }
  return p;
}

ContinuousPorts continuous_interconnect(SurfaceFunction v, LineFunction y, const TensorBoundary& boundary,
                                        int quad_degree) {
  const auto quad = quadrature(quad_degree);
  const IntervalMesh g1 = boundary.gamma1();
  const IntervalMesh g2 = boundary.gamma2();
  auto check = [g1](double x1) {
    const double tol = 1e-12 * g1.length();
    if (x1 < g1.start() - tol || x1 > g1.end() + tol) {
      std::ostringstream os;
      os << "continuous_interconnect: x1 = " << x1 << " lies outside Gamma_1 [" << g1.start() << ", " << g1.end()
         << "]";
      throw CouplingError(os.str());
    }
  };
  ContinuousPorts out;
  out.u = [y, check](double x1, double) {
    check(x1);
    return y(x1);
  };
  out.w = [v, check, g2, quad](double x1) {
    check(x1);
    const double h = g2.cell_width();
    double sum = 0.0;
    for (int c = 0; c < g2.n_cells(); ++c) {
      const double x0 = g2.node(static_cast<std::size_t>(c));
      for (std::size_t q = 0; q < quad.size(); ++q) sum += quad.weights[q] * h * v(x1, x0 + h * quad.points[q]);
    }
    return -sum;
  };
  return out;
}

bool CouplingPower::balanced(double rel_tol) const noexcept {
  return std::abs(residual) <= rel_tol * (std::abs(heat) + std::abs(fluid) + 1.0);
}

CouplingPower coupling_power(const CoupledPorts& ports, const DiracCoupling& coupling) {
  CouplingPower p;
  p.heat = coupling.surface_inner(ports.u_t, ports.v_out);
  p.fluid = coupling.line_inner(ports.y_out, ports.w_in);
  p.residual = p.heat + p.fluid;
  return p;
}

VerificationReport check_power_balance(const DiracCoupling& coupling, int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("check_power_balance: trials must be >= 1");
  VerificationReport r{"discrete coupling power balance", true, trials, 0.0, 1e-11, {}};
  FieldGenerator gen(seed);
  double worst_scaled = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SurfaceField v{gen.vector(static_cast<Eigen::Index>(coupling.n_psi()))};
    const LineField y{gen.vector(static_cast<Eigen::Index>(coupling.n_chi()))};
    const auto power = coupling_power(resolve_ports(v, y, coupling), coupling);
    const double scale = std::abs(power.heat) + std::abs(power.fluid) + 1.0;
    r.max_residual = std::max(r.max_residual, std::abs(power.residual));
    worst_scaled = std::max(worst_scaled, std::abs(power.residual) / scale);
    if (!power.balanced()) r.passed = false;
  }
  r.add("worst_residual_over_scale", worst_scaled);
  return r;
}

}  // namespace phc
