#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "phc/assembly.hpp"
#include "phc/basis.hpp"
#include "phc/dirac.hpp"
#include "phc/geometry.hpp"

namespace phc {

struct HeatMaterial {
  double rho = 1.0;     ///< density
  double c = 1.0;       ///< specific heat capacity
  double lambda = 1.0;  ///< thermal conductivity
  double t_ref = 1.0;   ///< temperature at s = 0

  double rho_c() const noexcept { return rho * c; }
  /// Throws MaterialError unless every parameter is strictly positive.
  void validate() const;
};

/// Constitutive law T(s) = t_ref exp(s / (rho c)); positive for every real s.
double temperature_of_entropy(double s, const HeatMaterial& mat) noexcept;
/// Inverse of temperature_of_entropy. Throws StateError for T <= 0.
double entropy_of_temperature(double temperature, const HeatMaterial& mat);
/// q(s) = rho c t_ref (exp(s / (rho c)) - 1), so that dq/ds = T and q(0) = 0.
double thermal_energy_density(double s, const HeatMaterial& mat) noexcept;

/// Nodal entropy density on the solid.
struct HeatState {
  std::vector<double> s;
};

/// Efforts and flows at the quadrature points of every cell.
struct HeatEffortFlow {
  std::vector<double> e_s;                  ///< T
  std::vector<std::array<double, 3>> f_phi; ///< -grad T
  std::vector<std::array<double, 3>> e_phi; ///< entropy flux Phi_S
  std::vector<std::array<double, 3>> phi_q; ///< heat flux Phi_Q = T Phi_S
  std::vector<double> f_sigma;              ///< T
  std::vector<double> e_sigma;              ///< -grad(1/T) . Phi_Q

  std::size_t size() const noexcept { return e_s.size(); }
};

enum class WallCondition {
  adiabatic,        ///< zero entropy flux on Gamma_int
  temperature_port  ///< Gamma_int temperature is the input u
};

struct HeatBoundary {
  WallCondition wall = WallCondition::temperature_port;
  /// Prescribed hot-gas temperature on Gamma_ext; adiabatic when empty.
  std::optional<double> external_temperature;
};

struct HeatRates {
  std::vector<double> ds_dt;
  SurfaceField v_out;            ///< -(Phi_S . n) on Gamma_int, zero for an adiabatic wall
  double external_power = 0.0;   ///< power entering through Gamma_ext
  double production = 0.0;       ///< int lambda |grad T|^2 / T^2
};

/// Galerkin realization of the entropy-based heat PHS on a SolidDomain.
///
/// Weak form, with T_h the Q1 interpolant of nodal temperatures:
///   M ds/dt = int grad phi . Phi_S + int phi sigma + int_{Gamma_int} phi v,
///   Phi_S = -lambda grad T_h / T_h,  sigma = lambda |grad T_h|^2 / T_h^2.
/// M is the lumped mass. Testing with the nodal temperatures makes the bulk terms cancel
/// pointwise, which leaves dQ/dt = <u, v>_Gamma plus external-face power.
class HeatModel {
 public:
  HeatModel(SolidDomain domain, HeatMaterial material, HeatBoundary boundary = {}, int quad_degree = 3);

  const SolidDomain& domain() const noexcept { return domain_; }
  const HeatMaterial& material() const noexcept { return material_; }
  const HeatBoundary& boundary() const noexcept { return boundary_; }
  const BasisSet& basis() const noexcept { return basis_; }
  std::size_t n_nodes() const noexcept { return basis_.n_dofs(); }
  std::size_t n_quadrature_points() const noexcept { return basis_.n_cells() * weights_.size(); }

  const std::vector<double>& lumped_mass() const noexcept { return lumped_mass_; }
  const std::vector<std::size_t>& wall_nodes() const noexcept { return wall_nodes_; }
  const std::vector<std::size_t>& external_nodes() const noexcept { return external_nodes_; }
  const SparseMatrix& wall_mass() const noexcept { return wall_mass_; }

  /// Uniform state at temperature T.
  HeatState uniform_state(double temperature) const;

  /// Nodal temperatures T(s), with Dirichlet data (u on the wall when it is a port,
  /// the external temperature when prescribed) substituted. Throws StateError on
  /// non-finite entropy or non-positive u.
  std::vector<double> nodal_temperature(const HeatState& state, std::span<const double> u_wall = {}) const;

  /// Closure relations evaluated at every quadrature point.
  HeatEffortFlow apply_closure(std::span<const double> nodal_temperature) const;

  /// F_i = int grad phi_i . Phi_S + int phi_i sigma. Returns int sigma.
  double entropy_load(std::span<const double> nodal_temperature, std::span<double> load) const;

  /// Semi-discrete right-hand side. `u_rate` is du/dt on the wall (zero when empty);
  /// wall and external Dirichlet nodes get ds/dt from the data, not from the balance.
  HeatRates heat_rhs(const HeatState& state, std::span<const double> u_wall = {},
                     std::span<const double> u_rate = {}) const;

  /// v on the wall from the boundary residual r = M_L ds/dt - F restricted to Gamma_int.
  Eigen::VectorXd wall_flux(std::span<const double> wall_residual) const;

  double hamiltonian(const HeatState& state) const;
  double total_entropy(const HeatState& state) const;

  bool wall_is_port() const noexcept { return boundary_.wall == WallCondition::temperature_port; }
  bool external_is_prescribed() const noexcept { return boundary_.external_temperature.has_value(); }

 private:
  SolidDomain domain_;
  HeatMaterial material_;
  HeatBoundary boundary_;
  BasisSet basis_;
  std::vector<double> weights_;                          // w_q * |cell|
  std::vector<std::array<double, 8>> values_;            // N_a at q
  std::vector<std::array<std::array<double, 3>, 8>> grads_;  // grad N_a at q
  std::vector<std::array<std::size_t, 8>> cell_dofs_;
  std::vector<double> lumped_mass_;
  std::vector<std::size_t> wall_nodes_;
  std::vector<std::size_t> external_nodes_;
  SparseMatrix wall_mass_;
  std::shared_ptr<const Eigen::SimplicialLDLT<SparseMatrix>> wall_solver_;
};

}  // namespace phc
