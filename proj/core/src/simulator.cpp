#include "phc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "phc/errors.hpp"

namespace phc {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("sim.dt must be positive");
  if (!(t_end >= dt)) throw ConfigError("sim.t_end must be >= sim.dt");
  if (!(newton_tol > 0.0)) throw ConfigError("sim.newton_tol must be positive");
  if (newton_max_iters < 1) throw ConfigError("sim.newton_max_iters must be >= 1");
  if (output_every < 0) throw ConfigError("sim.output_every must be >= 0");
}

int SimConfig::n_steps() const { return static_cast<int>(std::llround(t_end / dt)); }

const char* EnergyLedger::csv_header() {
  return "time,Q_heat,H_fluid,total,P_couple_heat,P_couple_fluid,P_couple_residual,P_ext,S_solid,S_fluid";
}

void EnergyLedger::write_csv(std::ostream& os) const {
  os << csv_header() << '\n';
  const auto old = os.precision(17);
  for (const auto& r : records) {
    os << r.time << ',' << r.q_heat << ',' << r.h_fluid << ',' << r.total << ',' << r.p_couple_heat << ','
       << r.p_couple_fluid << ',' << r.p_couple_residual << ',' << r.p_ext << ',' << r.s_solid << ',' << r.s_fluid
       << '\n';
  }
  os.precision(old);
}

double EnergyLedger::final_drift() const {
  if (records.size() < 2) return 0.0;
  double supplied = 0.0;
  for (std::size_t k = 1; k < records.size(); ++k)
    supplied += (records[k].time - records[k - 1].time) * records[k].p_ext;
  return std::abs(records.back().total - records.front().total - supplied);
}

double EnergyLedger::max_coupling_residual() const {
  double m = 0.0;
  for (const auto& r : records) m = std::max(m, std::abs(r.p_couple_residual));
  return m;
}

double EnergyLedger::worst_entropy_decrease() const {
  double worst = 0.0;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const double d = (records[k].s_solid + records[k].s_fluid) - (records[k - 1].s_solid + records[k - 1].s_fluid);
    worst = std::min(worst, d);
  }
  return worst;
}

CoupledSimulator::CoupledSimulator(std::optional<HeatModel> heat, std::optional<FluidModel> fluid, Options options)
    : heat_(std::move(heat)), fluid_(std::move(fluid)), options_(options) {
  if (!heat_ && !fluid_) throw ConfigError("simulator needs at least one subsystem");
  if (options_.coupled) {
    if (!heat_ || !fluid_) throw ConfigError("coupled simulation needs both heat and fluid subsystems");
    if (!heat_->wall_is_port()) throw ConfigError("coupled simulation needs a temperature port on Gamma_int");
    if (!heat_->domain().axial().matches(fluid_->mesh())) {
      std::ostringstream os;
      os << "coupling-incompatibility: solid axial mesh [" << heat_->domain().axial().start() << ", "
         << heat_->domain().axial().end() << "] x " << heat_->domain().axial().n_cells() << " cells vs channel mesh ["
         << fluid_->mesh().start() << ", " << fluid_->mesh().end() << "] x " << fluid_->mesh().n_cells() << " cells";
      throw CouplingError(os.str());
    }
    coupling_.emplace(heat_->domain().coupling_face());
  }
  if (heat_ && heat_->wall_is_port() && !options_.coupled && !options_.wall_temperature) {
    throw ConfigError("temperature port on Gamma_int needs either coupling or a fixed wall temperature");
  }
  if (options_.wall_temperature && !(*options_.wall_temperature > 0.0)) {
    throw MaterialError("wall temperature must be positive");
  }

  if (heat_) {
    wall_dirichlet_ = heat_->wall_is_port();
    heat_slot_.assign(heat_->n_nodes(), -1);
    std::vector<char> fixed(heat_->n_nodes(), 0);
    if (wall_dirichlet_)
      for (auto n : heat_->wall_nodes()) fixed[n] = 1;
    if (heat_->external_is_prescribed())
      for (auto n : heat_->external_nodes()) fixed[n] = 1;
    for (std::size_t n = 0; n < heat_->n_nodes(); ++n) {
      if (!fixed[n]) {
        heat_slot_[n] = static_cast<Eigen::Index>(heat_free_.size());
        heat_free_.push_back(n);
      }
    }
  }
  fluid_offset_ = static_cast<Eigen::Index>(heat_free_.size());
  n_unknowns_ = fluid_offset_;
  if (fluid_) {
    const auto n = static_cast<Eigen::Index>(fluid_->n_nodes());
    n_unknowns_ += n + std::max<Eigen::Index>(n - 2, 0) + n;
  }
  build_pattern();
}

Eigen::VectorXd CoupledSimulator::pack(const SystemState& state) const {
  Eigen::VectorXd x(n_unknowns_);
  for (std::size_t k = 0; k < heat_free_.size(); ++k) x[static_cast<Eigen::Index>(k)] = state.heat.s[heat_free_[k]];
  if (fluid_) {
    const auto n = static_cast<Eigen::Index>(fluid_->n_nodes());
    Eigen::Index o = fluid_offset_;
    for (Eigen::Index i = 0; i < n; ++i) x[o++] = state.fluid.phi[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 1; i + 1 < n; ++i) x[o++] = state.fluid.vel[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < n; ++i) x[o++] = state.fluid.s[static_cast<std::size_t>(i)];
  }
  return x;
}

SystemState CoupledSimulator::unpack(const Eigen::VectorXd& x, const SystemState& base) const {
  SystemState s = base;
  for (std::size_t k = 0; k < heat_free_.size(); ++k) s.heat.s[heat_free_[k]] = x[static_cast<Eigen::Index>(k)];
  if (fluid_) {
    const auto n = static_cast<Eigen::Index>(fluid_->n_nodes());
    Eigen::Index o = fluid_offset_;
    for (Eigen::Index i = 0; i < n; ++i) s.fluid.phi[static_cast<std::size_t>(i)] = x[o++];
    s.fluid.vel.front() = 0.0;
    s.fluid.vel.back() = 0.0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) s.fluid.vel[static_cast<std::size_t>(i)] = x[o++];
    for (Eigen::Index i = 0; i < n; ++i) s.fluid.s[static_cast<std::size_t>(i)] = x[o++];
  }
  apply_dirichlet(s);
  return s;
}

void CoupledSimulator::apply_dirichlet(SystemState& state) const {
  if (!heat_) return;
  const auto& mat = heat_->material();
  if (wall_dirichlet_) {
    const auto& wall = heat_->wall_nodes();
    if (options_.coupled) {
      const auto y = fluid_->temperature(state.fluid);
      LineField yl{Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()))};
      const Eigen::VectorXd u =
          coupling_->solve_surface_mass(coupling_->operators().d_psi * yl.values);
      for (std::size_t k = 0; k < wall.size(); ++k)
        state.heat.s[wall[k]] = entropy_of_temperature(u[static_cast<Eigen::Index>(k)], mat);
    } else {
      const double s = entropy_of_temperature(*options_.wall_temperature, mat);
      for (auto n : wall) state.heat.s[n] = s;
    }
  }
  if (heat_->external_is_prescribed()) {
    const double s = entropy_of_temperature(*heat_->boundary().external_temperature, mat);
    for (auto n : heat_->external_nodes()) state.heat.s[n] = s;
  }
}

SystemState CoupledSimulator::make_consistent(SystemState state) const {
  if (fluid_ && !state.fluid.vel.empty()) {
    state.fluid.vel.front() = 0.0;
    state.fluid.vel.back() = 0.0;
  }
  apply_dirichlet(state);
  return state;
}

void CoupledSimulator::midpoint_residual(const SystemState& s0, const SystemState& s1, double dt,
                                         Eigen::VectorXd* residual, Diagnostics* diag) const {
  FluidState fluid_mid;
  std::vector<double> y_mid;
  if (fluid_) {
    const std::size_t n = fluid_->n_nodes();
    fluid_mid.phi.resize(n);
    fluid_mid.vel.resize(n);
    fluid_mid.s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      fluid_mid.phi[i] = 0.5 * (s0.fluid.phi[i] + s1.fluid.phi[i]);
      fluid_mid.vel[i] = 0.5 * (s0.fluid.vel[i] + s1.fluid.vel[i]);
      fluid_mid.s[i] = 0.5 * (s0.fluid.s[i] + s1.fluid.s[i]);
    }
    y_mid = fluid_->temperature(fluid_mid);
  }

  std::vector<double> entropy_load_fluid;
  if (fluid_) entropy_load_fluid.assign(fluid_->n_nodes(), 0.0);

  if (heat_) {
    const auto& h = *heat_;
    const auto& mat = h.material();
    const auto& mass = h.lumped_mass();
    std::vector<double> t_mid(h.n_nodes());
    for (std::size_t i = 0; i < t_mid.size(); ++i) {
      const double s = 0.5 * (s0.heat.s[i] + s1.heat.s[i]);
      if (!std::isfinite(s)) throw StateError("s", i, s);
      t_mid[i] = temperature_of_entropy(s, mat);
    }
    const auto& wall = h.wall_nodes();
    Eigen::VectorXd u_mid;
    LineField y_line;
    if (wall_dirichlet_) {
      if (options_.coupled) {
        y_line.values = Eigen::Map<const Eigen::VectorXd>(y_mid.data(), static_cast<Eigen::Index>(y_mid.size()));
        u_mid = coupling_->solve_surface_mass(coupling_->operators().d_psi * y_line.values);
      } else {
        u_mid = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(wall.size()), *options_.wall_temperature);
      }
      for (std::size_t k = 0; k < wall.size(); ++k) {
        if (!(u_mid[static_cast<Eigen::Index>(k)] > 0.0)) throw StateError("u_T", k, u_mid[static_cast<Eigen::Index>(k)]);
        t_mid[wall[k]] = u_mid[static_cast<Eigen::Index>(k)];
      }
    }
    if (h.external_is_prescribed()) {
      for (auto n : h.external_nodes()) t_mid[n] = *h.boundary().external_temperature;
    }

    std::vector<double> load(h.n_nodes());
    h.entropy_load(t_mid, load);

    if (residual) {
      for (std::size_t k = 0; k < heat_free_.size(); ++k) {
        const std::size_t n = heat_free_[k];
        (*residual)[static_cast<Eigen::Index>(k)] = (s1.heat.s[n] - s0.heat.s[n]) - dt * load[n] / mass[n];
      }
    }

    double p_ext = 0.0;
    if (h.external_is_prescribed()) {
      double inflow = 0.0;
      for (auto n : h.external_nodes()) inflow += mass[n] * (s1.heat.s[n] - s0.heat.s[n]) / dt - load[n];
      p_ext += *h.boundary().external_temperature * inflow;
    }

    if (wall_dirichlet_) {
      std::vector<double> r_wall(wall.size());
      for (std::size_t k = 0; k < wall.size(); ++k) {
        const std::size_t n = wall[k];
        r_wall[k] = mass[n] * (s1.heat.s[n] - s0.heat.s[n]) / dt - load[n];
      }
      SurfaceField v{h.wall_flux(r_wall)};
      if (options_.coupled) {
        const auto ports = resolve_ports(v, y_line, *coupling_, options_.flux_scale);
        const Eigen::VectorXd fl = coupling_->operators().m_chi * ports.w_in.values;
        for (std::size_t i = 0; i < entropy_load_fluid.size(); ++i) entropy_load_fluid[i] = fl[static_cast<Eigen::Index>(i)];
        if (diag) diag->power = coupling_power(ports, *coupling_);
      } else {
        // fixed wall temperature acts as an external reservoir
        for (std::size_t k = 0; k < wall.size(); ++k) p_ext += u_mid[static_cast<Eigen::Index>(k)] * r_wall[k];
      }
    }
    if (diag) diag->p_ext = p_ext;
  }

  if (fluid_ && residual) {
    const auto rates = fluid_->rates_with_load(fluid_mid, entropy_load_fluid);
    const auto n = static_cast<Eigen::Index>(fluid_->n_nodes());
    Eigen::Index o = fluid_offset_;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      (*residual)[o++] = (s1.fluid.phi[k] - s0.fluid.phi[k]) - dt * rates.dphi_dt[k];
    }
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      (*residual)[o++] = (s1.fluid.vel[k] - s0.fluid.vel[k]) - dt * rates.dvel_dt[k];
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      (*residual)[o++] = (s1.fluid.s[k] - s0.fluid.s[k]) - dt * rates.ds_dt[k];
    }
  }
}

void CoupledSimulator::build_pattern() {
  std::vector<std::set<Eigen::Index>> rows(static_cast<std::size_t>(n_unknowns_));
  const Eigen::Index nf = fluid_ ? static_cast<Eigen::Index>(fluid_->n_nodes()) : 0;
  auto fluid_cols = [&](Eigen::Index k, std::set<Eigen::Index>& out) {
    for (Eigen::Index m = std::max<Eigen::Index>(k - 1, 0); m <= std::min(k + 1, nf - 1); ++m) {
      out.insert(fluid_offset_ + m);
      if (m >= 1 && m + 1 < nf) out.insert(fluid_offset_ + nf + (m - 1));
      out.insert(fluid_offset_ + nf + std::max<Eigen::Index>(nf - 2, 0) + m);
    }
  };

  if (heat_) {
    const auto& h = *heat_;
    const auto& basis = h.basis();
    const std::size_t n_az = h.domain().azimuthal().n_nodes();
    const std::size_t n_ax = h.domain().axial().n_nodes();
    std::vector<std::set<std::size_t>> adjacency(h.n_nodes());
    for (std::size_t c = 0; c < basis.n_cells(); ++c) {
      const auto dofs = basis.cell_dofs(c);
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) adjacency[dofs[static_cast<std::size_t>(a)]].insert(dofs[static_cast<std::size_t>(b)]);
    }
    const std::size_t n_wall = h.wall_nodes().size();
    auto is_wall = [&](std::size_t node) { return node < n_wall; };
    auto axial_of = [&](std::size_t node) { return static_cast<Eigen::Index>((node / n_az) % n_ax); };

    for (std::size_t k = 0; k < heat_free_.size(); ++k) {
      auto& row = rows[k];
      for (auto nb : adjacency[heat_free_[k]]) {
        if (heat_slot_[nb] >= 0) row.insert(heat_slot_[nb]);
        else if (wall_dirichlet_ && options_.coupled && is_wall(nb)) fluid_cols(axial_of(nb), row);
      }
    }
    if (options_.coupled) {
      const Eigen::Index s_base = fluid_offset_ + nf + std::max<Eigen::Index>(nf - 2, 0);
      for (std::size_t w = 0; w < n_wall; ++w) {
        auto& row = rows[static_cast<std::size_t>(s_base + axial_of(w))];
        for (auto nb : adjacency[w]) {
          if (heat_slot_[nb] >= 0) row.insert(heat_slot_[nb]);
          else if (is_wall(nb)) fluid_cols(axial_of(nb), row);
        }
      }
    }
  }
  if (fluid_) {
    for (Eigen::Index k = 0; k < nf; ++k) {
      fluid_cols(k, rows[static_cast<std::size_t>(fluid_offset_ + k)]);
      if (k >= 1 && k + 1 < nf) fluid_cols(k, rows[static_cast<std::size_t>(fluid_offset_ + nf + k - 1)]);
      fluid_cols(k, rows[static_cast<std::size_t>(fluid_offset_ + nf + std::max<Eigen::Index>(nf - 2, 0) + k)]);
    }
  }
  std::vector<std::vector<Eigen::Index>> pattern(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r].insert(static_cast<Eigen::Index>(r));
    pattern[r].assign(rows[r].begin(), rows[r].end());
  }
  jacobian_.emplace(n_unknowns_, pattern);
}

LedgerRecord CoupledSimulator::measure(const SystemState& state, double time) const {
  LedgerRecord r;
  r.time = time;
  if (heat_) {
    r.q_heat = heat_->hamiltonian(state.heat);
    r.s_solid = heat_->total_entropy(state.heat);
  }
  if (fluid_) {
    r.h_fluid = fluid_->hamiltonian(state.fluid);
    r.s_fluid = fluid_->total_entropy(state.fluid);
  }
  r.total = r.q_heat + r.h_fluid;
  return r;
}

CoupledSimulator::StepResult CoupledSimulator::step(const SystemState& state, double time,
                                                    const SimConfig& cfg) const {
  const double dt = cfg.dt;
  const ResidualFunction f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    const SystemState s1 = unpack(x, state);
    midpoint_residual(state, s1, dt, &r, nullptr);
  };
  NewtonOptions opts;
  opts.tol = cfg.newton_tol;
  opts.max_iters = cfg.newton_max_iters;
  const auto result = newton_solve(f, pack(state), *jacobian_, opts);
  if (!result.converged) {
    std::ostringstream os;
    os << "Newton did not converge at t = " << time + dt << " after " << result.iterations
       << " residual evaluations, last residual " << std::scientific << result.residual;
    throw StepFailure(os.str(), result.residual, result.iterations);
  }
  StepResult out;
  out.state = unpack(result.x, state);
  Diagnostics diag;
  midpoint_residual(state, out.state, dt, nullptr, &diag);
  out.record = measure(out.state, time + dt);
  out.record.p_couple_heat = diag.power.heat;
  out.record.p_couple_fluid = diag.power.fluid;
  out.record.p_couple_residual = diag.power.residual;
  out.record.p_ext = diag.p_ext;
  out.record.newton_iterations = result.iterations;
  out.record.newton_residual = result.residual;
  return out;
}

RunResult CoupledSimulator::run(SystemState initial, const SimConfig& cfg, const SnapshotSink& sink) const {
  cfg.validate();
  RunResult out;
  out.final_state = std::move(initial);
  out.ledger.records.push_back(measure(out.final_state, 0.0));
  const auto& first = out.ledger.records.front();
  out.ledger.scale = std::max(1.0, std::abs(first.q_heat) + std::abs(first.h_fluid));
  if (sink && cfg.output_every > 0) sink(0, 0.0, out.final_state);
  const int n = cfg.n_steps();
  double t = 0.0;
  for (int k = 1; k <= n; ++k) {
    auto s = step(out.final_state, t, cfg);
    t = cfg.dt * k;
    s.record.time = t;
    out.final_state = std::move(s.state);
    out.ledger.records.push_back(s.record);
    out.steps = k;
    if (sink && cfg.output_every > 0 && (k % cfg.output_every == 0 || k == n)) sink(k, t, out.final_state);
  }
  return out;
}

}  // namespace phc
