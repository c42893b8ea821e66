#include "phc/heat.hpp"

#include <cmath>
#include <sstream>

#include "phc/errors.hpp"

namespace phc {

void HeatMaterial::validate() const {
  auto need = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "heat material parameter '" << name << "' must be positive, got " << v;
      throw MaterialError(os.str());
    }
  };
  need(rho, "rho");
  need(c, "c");
  need(lambda, "lambda");
  need(t_ref, "t_ref");
}

double temperature_of_entropy(double s, const HeatMaterial& mat) noexcept {
  return mat.t_ref * std::exp(s / mat.rho_c());
}

double entropy_of_temperature(double temperature, const HeatMaterial& mat) {
  if (!(temperature > 0.0)) throw StateError("T", 0, temperature);
  return mat.rho_c() * std::log(temperature / mat.t_ref);
}

double thermal_energy_density(double s, const HeatMaterial& mat) noexcept {
  return mat.rho_c() * mat.t_ref * std::expm1(s / mat.rho_c());
}

HeatModel::HeatModel(SolidDomain domain, HeatMaterial material, HeatBoundary boundary, int quad_degree)
    : domain_(std::move(domain)),
      material_(material),
      boundary_(boundary),
      basis_(BasisSet::volume(domain_)) {
  material_.validate();
  if (boundary_.external_temperature && !(*boundary_.external_temperature > 0.0)) {
    throw MaterialError("external temperature must be positive");
  }
  const auto quad = quadrature(quad_degree);
  if (quad.degree < 2) throw ConfigError("heat model needs quadrature degree >= 2");

  const double jac = basis_.cell_measure();
  for (std::size_t k = 0; k < quad.size(); ++k)
    for (std::size_t i = 0; i < quad.size(); ++i)
      for (std::size_t j = 0; j < quad.size(); ++j) {
        const std::array<double, 3> xi{quad.points[i], quad.points[j], quad.points[k]};
        weights_.push_back(quad.weights[i] * quad.weights[j] * quad.weights[k] * jac);
        std::array<double, 8> v{};
        std::array<std::array<double, 3>, 8> g{};
        for (int a = 0; a < 8; ++a) {
          v[static_cast<std::size_t>(a)] = basis_.shape_value(a, xi);
          g[static_cast<std::size_t>(a)] = basis_.shape_gradient(a, xi);
        }
        values_.push_back(v);
        grads_.push_back(g);
      }

  cell_dofs_.reserve(basis_.n_cells());
  lumped_mass_.assign(basis_.n_dofs(), 0.0);
  for (std::size_t c = 0; c < basis_.n_cells(); ++c) {
    cell_dofs_.push_back(basis_.cell_dofs(c));
    for (std::size_t q = 0; q < weights_.size(); ++q)
      for (std::size_t a = 0; a < 8; ++a) lumped_mass_[cell_dofs_.back()[a]] += weights_[q] * values_[q][a];
  }

  wall_nodes_ = domain_.coupling_face_nodes();
  external_nodes_ = domain_.external_face_nodes();
  wall_mass_ = assemble_mass(BasisSet::surface(domain_.coupling_face()), quad);
  auto solver = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(wall_mass_);
  if (solver->info() != Eigen::Success) throw AssemblyError("wall mass factorization failed");
  wall_solver_ = std::move(solver);
}

HeatState HeatModel::uniform_state(double temperature) const {
  return HeatState{std::vector<double>(n_nodes(), entropy_of_temperature(temperature, material_))};
}

std::vector<double> HeatModel::nodal_temperature(const HeatState& state, std::span<const double> u_wall) const {
  if (state.s.size() != n_nodes()) {
    throw CouplingError("heat state has " + std::to_string(state.s.size()) + " nodes, mesh has " +
                        std::to_string(n_nodes()));
  }
  std::vector<double> t(n_nodes());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(state.s[i])) throw StateError("s", i, state.s[i]);
    t[i] = temperature_of_entropy(state.s[i], material_);
  }
  if (wall_is_port() && !u_wall.empty()) {
    if (u_wall.size() != wall_nodes_.size()) {
      throw CouplingError("wall input has " + std::to_string(u_wall.size()) + " values, Gamma_int has " +
                          std::to_string(wall_nodes_.size()) + " nodes");
    }
    for (std::size_t k = 0; k < wall_nodes_.size(); ++k) {
      if (!(u_wall[k] > 0.0)) throw StateError("u_T", k, u_wall[k]);
      t[wall_nodes_[k]] = u_wall[k];
    }
  }
  if (boundary_.external_temperature) {
    for (auto n : external_nodes_) t[n] = *boundary_.external_temperature;
  }
  return t;
}

HeatEffortFlow HeatModel::apply_closure(std::span<const double> nodal_t) const {
  HeatEffortFlow out;
  const std::size_t nq = n_quadrature_points();
  out.e_s.reserve(nq);
  out.f_phi.reserve(nq);
  out.e_phi.reserve(nq);
  out.phi_q.reserve(nq);
  out.f_sigma.reserve(nq);
  out.e_sigma.reserve(nq);
  const double lam = material_.lambda;
  for (const auto& dofs : cell_dofs_) {
    for (std::size_t q = 0; q < weights_.size(); ++q) {
      double th = 0.0;
      std::array<double, 3> g{0.0, 0.0, 0.0};
      for (std::size_t a = 0; a < 8; ++a) {
        const double ta = nodal_t[dofs[a]];
        th += values_[q][a] * ta;
        for (std::size_t d = 0; d < 3; ++d) g[d] += grads_[q][a][d] * ta;
      }
      if (!(th > 0.0)) throw StateError("T", dofs[0], th);
      std::array<double, 3> f_phi{-g[0], -g[1], -g[2]};
      std::array<double, 3> e_phi{};
      std::array<double, 3> phi_q{};
      double grad_inv_t_dot_q = 0.0;
      for (std::size_t d = 0; d < 3; ++d) {
        e_phi[d] = lam * f_phi[d] / th;  // Fourier: e_s e_phi = lambda f_phi
        phi_q[d] = th * e_phi[d];
        grad_inv_t_dot_q += (-g[d] / (th * th)) * phi_q[d];
      }
      out.e_s.push_back(th);
      out.f_phi.push_back(f_phi);
      out.e_phi.push_back(e_phi);
      out.phi_q.push_back(phi_q);
      out.f_sigma.push_back(th);
      out.e_sigma.push_back(-grad_inv_t_dot_q);
    }
  }
  return out;
}

double HeatModel::entropy_load(std::span<const double> nodal_t, std::span<double> load) const {
  std::fill(load.begin(), load.end(), 0.0);
  const double lam = material_.lambda;
  double production = 0.0;
  for (const auto& dofs : cell_dofs_) {
    std::array<double, 8> ta{};
    for (std::size_t a = 0; a < 8; ++a) ta[a] = nodal_t[dofs[a]];
    std::array<double, 8> local{};
    for (std::size_t q = 0; q < weights_.size(); ++q) {
      double th = 0.0;
      double g0 = 0.0, g1 = 0.0, g2 = 0.0;
      for (std::size_t a = 0; a < 8; ++a) {
        th += values_[q][a] * ta[a];
        g0 += grads_[q][a][0] * ta[a];
        g1 += grads_[q][a][1] * ta[a];
        g2 += grads_[q][a][2] * ta[a];
      }
      if (!(th > 0.0)) throw StateError("T", dofs[0], th);
      const double inv = 1.0 / th;
      const double s0 = -lam * g0 * inv, s1 = -lam * g1 * inv, s2 = -lam * g2 * inv;
      const double sigma = lam * (g0 * g0 + g1 * g1 + g2 * g2) * inv * inv;
      const double w = weights_[q];
      production += w * sigma;
      for (std::size_t a = 0; a < 8; ++a) {
        const auto& ga = grads_[q][a];
        local[a] += w * (ga[0] * s0 + ga[1] * s1 + ga[2] * s2 + values_[q][a] * sigma);
      }
    }
    for (std::size_t a = 0; a < 8; ++a) load[dofs[a]] += local[a];
  }
  return production;
}

Eigen::VectorXd HeatModel::wall_flux(std::span<const double> wall_residual) const {
  Eigen::VectorXd r(static_cast<Eigen::Index>(wall_residual.size()));
  for (std::size_t k = 0; k < wall_residual.size(); ++k) r[static_cast<Eigen::Index>(k)] = wall_residual[k];
  return wall_solver_->solve(r);
}

HeatRates HeatModel::heat_rhs(const HeatState& state, std::span<const double> u_wall,
                              std::span<const double> u_rate) const {
  if (wall_is_port() && u_wall.size() != wall_nodes_.size()) {
    throw CouplingError("heat_rhs: temperature port on Gamma_int needs " + std::to_string(wall_nodes_.size()) +
                        " input values, got " + std::to_string(u_wall.size()));
  }
  if (!u_rate.empty() && u_rate.size() != wall_nodes_.size()) {
    throw CouplingError("heat_rhs: u_rate size mismatch");
  }
  const auto t = nodal_temperature(state, u_wall);
  std::vector<double> load(n_nodes());
  HeatRates out;
  out.production = entropy_load(t, load);
  out.ds_dt.resize(n_nodes());
  for (std::size_t i = 0; i < n_nodes(); ++i) out.ds_dt[i] = load[i] / lumped_mass_[i];

  out.v_out.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(wall_nodes_.size()));
  if (wall_is_port()) {
    std::vector<double> residual(wall_nodes_.size());
    for (std::size_t k = 0; k < wall_nodes_.size(); ++k) {
      const std::size_t n = wall_nodes_[k];
      // ds/dt = (dS/dT) du/dt with S(T) = rho c ln(T / t_ref)
      const double rate = u_rate.empty() ? 0.0 : material_.rho_c() / u_wall[k] * u_rate[k];
      out.ds_dt[n] = rate;
      residual[k] = lumped_mass_[n] * rate - load[n];
    }
    out.v_out.values = wall_flux(residual);
  }
  if (boundary_.external_temperature) {
    double inflow = 0.0;
    for (auto n : external_nodes_) {
      out.ds_dt[n] = 0.0;
      inflow += -load[n];
    }
    out.external_power = *boundary_.external_temperature * inflow;
  }
  return out;
}

double HeatModel::hamiltonian(const HeatState& state) const {
  double q = 0.0;
  for (std::size_t i = 0; i < n_nodes(); ++i) q += lumped_mass_[i] * thermal_energy_density(state.s[i], material_);
  return q;
}

double HeatModel::total_entropy(const HeatState& state) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_nodes(); ++i) s += lumped_mass_[i] * state.s[i];
  return s;
}

}  // namespace phc
