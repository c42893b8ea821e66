#pragma once

#include <cstdint>
#include <functional>

#include "phc/dirac.hpp"
#include "phc/report.hpp"

namespace phc {

/// Port values of the heat/fluid interconnection.
struct CoupledPorts {
  SurfaceField u_t;    ///< heat input: embedded fluid temperature
  SurfaceField v_out;  ///< heat output: -(Phi_S . n)
  LineField w_in;      ///< fluid input: integrated entropy flux
  LineField y_out;     ///< fluid output: coolant temperature
};

/// Discrete interconnection: M_psi u = D_psi y and M_chi w = -D_chi v.
/// `flux_scale` multiplies w (a per-length normalization hook); only 1 preserves power.
CoupledPorts resolve_ports(const SurfaceField& v_out, const LineField& y_out, const DiracCoupling& coupling,
                           double flux_scale = 1.0);

using SurfaceFunction = std::function<double(double, double)>;
using LineFunction = std::function<double(double)>;

struct ContinuousPorts {
  SurfaceFunction u;  ///< u(x1, x2) = y(x1)
  LineFunction w;     ///< w(x1) = -int v(x1, x2) dx2
};

/// Field-level interconnection u = B y, w = -A v. The Gamma_2 integral uses a
/// composite Gauss rule of degree `quad_degree` on the azimuthal cells of `boundary`.
/// The returned functions throw CouplingError for x1 outside Gamma_1.
ContinuousPorts continuous_interconnect(SurfaceFunction v, LineFunction y, const TensorBoundary& boundary,
                                        int quad_degree = 9);

struct CouplingPower {
  double heat = 0.0;      ///< u^T M_psi v
  double fluid = 0.0;     ///< y^T M_chi w
  double residual = 0.0;  ///< heat + fluid

  /// |residual| <= 1e-11 (|heat| + |fluid| + 1)
  bool balanced(double rel_tol = 1e-11) const noexcept;
};

CouplingPower coupling_power(const CoupledPorts& ports, const DiracCoupling& coupling);

/// resolve_ports + coupling_power over seeded random (v, y); residual bound 1e-11 * scale.
VerificationReport check_power_balance(const DiracCoupling& coupling, int trials, std::uint64_t seed);

}  // namespace phc
