#pragma once

#include <span>
#include <vector>

#include "phc/assembly.hpp"
#include "phc/dirac.hpp"
#include "phc/geometry.hpp"

namespace phc {

/// Ideal gas in (specific volume, specific entropy) variables plus a friction coefficient.
struct FluidMaterial {
  double r_gas = 1.0;     ///< specific gas constant
  double c_v = 2.5;       ///< specific heat at constant volume
  double friction = 0.0;  ///< f >= 0
  double phi_ref = 1.0;
  double s_ref = 0.0;
  double t_ref = 1.0;

  double gamma() const noexcept { return 1.0 + r_gas / c_v; }
  void validate() const;
};

struct EosPoint {
  double p;      ///< pressure
  double t;      ///< temperature
  double u_int;  ///< internal energy per unit mass
};

/// T = t_ref (phi_ref / phi)^(R / c_v) exp((s - s_ref) / c_v), p = R T / phi, u = c_v T.
/// Satisfies du = -p dphi + T ds. Throws StateError for phi <= 0.
EosPoint eos(double phi, double s, const FluidMaterial& mat);

/// Specific entropy that gives temperature `t` at specific volume `phi`.
double entropy_of(double phi, double t, const FluidMaterial& mat);

/// Small-signal propagation speed in z for this formulation: sqrt(-dp/dphi|_s) =
/// sqrt(gamma R T) / phi. Equals the textbook sound speed sqrt(gamma R T) at phi = 1.
double acoustic_speed(double phi, double s, const FluidMaterial& mat);

struct FluidState {
  std::vector<double> phi;
  std::vector<double> vel;
  std::vector<double> s;

  std::size_t size() const noexcept { return phi.size(); }
};

struct FluidRates {
  std::vector<double> dphi_dt;
  std::vector<double> dvel_dt;
  std::vector<double> ds_dt;
  LineField y_out;           ///< nodal temperature
  double production = 0.0;   ///< int f v^2 / T
};

/// Collocated P1 discretization of the irreversible fluid PHS on a sealed channel
///   m dphi/dt = G v
///   m dv/dt   = -G p - m (f v / T) T
///   m ds/dt   = m (f v / T) v + M_chi w
/// with lumped mass m and G_ij = int chi_i chi_j'. The end velocities are held at zero.
class FluidModel {
 public:
  FluidModel(IntervalMesh mesh, FluidMaterial material);

  const IntervalMesh& mesh() const noexcept { return mesh_; }
  const FluidMaterial& material() const noexcept { return material_; }
  std::size_t n_nodes() const noexcept { return mesh_.n_nodes(); }
  const std::vector<double>& lumped_mass() const noexcept { return lumped_mass_; }
  const SparseMatrix& line_mass() const noexcept { return line_mass_; }

  /// Uniform state at rest.
  FluidState uniform_state(double phi, double temperature) const;

  /// Nodal temperatures; throws StateError naming the node on phi <= 0 or T <= 0.
  std::vector<double> temperature(const FluidState& state) const;

  /// Rates for a distributed entropy input w (nodal LineField, zero if empty).
  FluidRates fluid_rhs(const FluidState& state, const LineField& w_in = {}) const;

  /// Rates with the assembled entropy load (M_chi w)_i given directly.
  FluidRates rates_with_load(const FluidState& state, std::span<const double> entropy_load) const;

  double hamiltonian(const FluidState& state) const;
  double total_entropy(const FluidState& state) const;
  /// int phi dz; conserved on a sealed channel.
  double total_volume(const FluidState& state) const;

 private:
  IntervalMesh mesh_;
  FluidMaterial material_;
  std::vector<double> lumped_mass_;
  SparseMatrix line_mass_;
};

}  // namespace phc
