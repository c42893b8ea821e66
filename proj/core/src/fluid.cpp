#include "phc/fluid.hpp"

#include <cmath>
#include <sstream>

#include "phc/errors.hpp"

namespace phc {

void FluidMaterial::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "fluid material parameter '" << name << "' must be positive, got " << v;
      throw MaterialError(os.str());
    }
  };
  positive(r_gas, "r_gas");
  positive(c_v, "c_v");
  positive(phi_ref, "phi_ref");
  positive(t_ref, "t_ref");
  if (!(friction >= 0.0)) throw MaterialError("fluid friction coefficient must be >= 0");
  if (!std::isfinite(s_ref)) throw MaterialError("fluid s_ref must be finite");
}

EosPoint eos(double phi, double s, const FluidMaterial& mat) {
  if (!(phi > 0.0)) throw StateError("phi", 0, phi);
  const double t = mat.t_ref * std::pow(mat.phi_ref / phi, mat.r_gas / mat.c_v) * std::exp((s - mat.s_ref) / mat.c_v);
  return EosPoint{mat.r_gas * t / phi, t, mat.c_v * t};
}

double entropy_of(double phi, double t, const FluidMaterial& mat) {
  if (!(phi > 0.0)) throw StateError("phi", 0, phi);
  if (!(t > 0.0)) throw StateError("T", 0, t);
  return mat.s_ref + mat.c_v * std::log(t / mat.t_ref) + mat.r_gas * std::log(phi / mat.phi_ref);
}

double acoustic_speed(double phi, double s, const FluidMaterial& mat) {
  const auto e = eos(phi, s, mat);
  return std::sqrt(mat.gamma() * mat.r_gas * e.t) / phi;
}

FluidModel::FluidModel(IntervalMesh mesh, FluidMaterial material) : mesh_(mesh), material_(material) {
  material_.validate();
  if (mesh_.periodic()) throw DomainError("fluid channel mesh must not be periodic");
  const auto basis = BasisSet::interval(mesh_);
  line_mass_ = assemble_mass(basis, quadrature(3));
  lumped_mass_.assign(n_nodes(), 0.0);
  const double h = mesh_.cell_width();
  for (int c = 0; c < mesh_.n_cells(); ++c) {
    const auto [l, r] = mesh_.cell_nodes(c);
    lumped_mass_[l] += 0.5 * h;
    lumped_mass_[r] += 0.5 * h;
  }
}

FluidState FluidModel::uniform_state(double phi, double temperature) const {
  const double s = entropy_of(phi, temperature, material_);
  return FluidState{std::vector<double>(n_nodes(), phi), std::vector<double>(n_nodes(), 0.0),
                    std::vector<double>(n_nodes(), s)};
}

std::vector<double> FluidModel::temperature(const FluidState& state) const {
  if (state.phi.size() != n_nodes() || state.vel.size() != n_nodes() || state.s.size() != n_nodes()) {
    throw CouplingError("fluid state size does not match the channel mesh (" + std::to_string(n_nodes()) + " nodes)");
  }
  std::vector<double> t(n_nodes());
  for (std::size_t i = 0; i < n_nodes(); ++i) {
    if (!(state.phi[i] > 0.0)) throw StateError("phi", i, state.phi[i]);
    if (!std::isfinite(state.s[i])) throw StateError("s_fluid", i, state.s[i]);
    t[i] = eos(state.phi[i], state.s[i], material_).t;
    if (!(t[i] > 0.0) || !std::isfinite(t[i])) throw StateError("T_fluid", i, t[i]);
  }
  return t;
}

FluidRates FluidModel::fluid_rhs(const FluidState& state, const LineField& w_in) const {
  std::vector<double> load(n_nodes(), 0.0);
  if (w_in.values.size() != 0) {
    if (static_cast<std::size_t>(w_in.values.size()) != n_nodes()) {
      throw CouplingError("fluid_rhs: w_in has " + std::to_string(w_in.values.size()) + " values, channel has " +
                          std::to_string(n_nodes()) + " nodes");
    }
    const Eigen::VectorXd l = line_mass_ * w_in.values;
    for (std::size_t i = 0; i < n_nodes(); ++i) load[i] = l[static_cast<Eigen::Index>(i)];
  }
  return rates_with_load(state, load);
}

FluidRates FluidModel::rates_with_load(const FluidState& state, std::span<const double> entropy_load) const {
  const auto t = temperature(state);
  const std::size_t n = n_nodes();
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = material_.r_gas * t[i] / state.phi[i];

  FluidRates out;
  out.dphi_dt.assign(n, 0.0);
  out.dvel_dt.assign(n, 0.0);
  out.ds_dt.assign(n, 0.0);
  out.y_out.values.resize(static_cast<Eigen::Index>(n));

  // G a: cell [l, r] contributes (a_r - a_l) / 2 to both rows
  std::vector<double> gv(n, 0.0);
  std::vector<double> gp(n, 0.0);
  for (int c = 0; c < mesh_.n_cells(); ++c) {
    const auto [l, r] = mesh_.cell_nodes(c);
    const double dv = 0.5 * (state.vel[r] - state.vel[l]);
    const double dp = 0.5 * (p[r] - p[l]);
    gv[l] += dv;
    gv[r] += dv;
    gp[l] += dp;
    gp[r] += dp;
  }
  const double f = material_.friction;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = lumped_mass_[i];
    const double coupling = f * state.vel[i] / t[i];  // the +-fv/T entries of the structure operator
    out.dphi_dt[i] = gv[i] / m;
    out.dvel_dt[i] = -gp[i] / m - coupling * t[i];
    out.ds_dt[i] = coupling * state.vel[i] + entropy_load[i] / m;
    out.production += m * coupling * state.vel[i];
    out.y_out.values[static_cast<Eigen::Index>(i)] = t[i];
  }
  out.dvel_dt.front() = 0.0;
  out.dvel_dt.back() = 0.0;
  return out;
}

double FluidModel::hamiltonian(const FluidState& state) const {
  const auto t = temperature(state);
  double h = 0.0;
  for (std::size_t i = 0; i < n_nodes(); ++i)
    h += lumped_mass_[i] * (0.5 * state.vel[i] * state.vel[i] + material_.c_v * t[i]);
  return h;
}

double FluidModel::total_entropy(const FluidState& state) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_nodes(); ++i) s += lumped_mass_[i] * state.s[i];
  return s;
}

double FluidModel::total_volume(const FluidState& state) const {
  double v = 0.0;
  for (std::size_t i = 0; i < n_nodes(); ++i) v += lumped_mass_[i] * state.phi[i];
  return v;
}

}  // namespace phc
