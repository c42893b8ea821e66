#include "phc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "phc/coupling.hpp"
#include "phc/csv.hpp"
#include "phc/errors.hpp"
#include "phc/random.hpp"

namespace phc {

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"equilibrium", "hot-wall-cooldown", "heated-ext-face",
                                              "acoustic-pulse"};
  return names;
}

bool is_scenario(const std::string& name) {
  const auto& n = scenario_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

SolidDomain solid_of(const GeometryConfig& g) {
  return build_solid_domain(g.a, g.b, g.circumference, g.depth, g.n_ax, g.n_az, g.n_th);
}

IntervalMesh channel_of(const GeometryConfig& g, int n_cells) { return IntervalMesh(g.a, g.b, n_cells); }

// Smooth through-thickness bump: zero with zero slope at the wall, flat at the external face.
double hot_profile(const GeometryConfig& g, double x1, double xi) {
  const double through = 0.5 * (1.0 - std::cos(std::numbers::pi * xi / g.depth));
  const double along = (2.0 + std::cos(std::numbers::pi * (x1 - g.a) / (g.b - g.a))) / 3.0;
  return through * along;
}

Scenario coupled_scenario(const RunConfig& cfg, HeatBoundary boundary) {
  HeatModel heat(solid_of(cfg.geometry), cfg.heat, boundary);
  FluidModel fluid(channel_of(cfg.geometry, cfg.geometry.n_fluid), cfg.fluid);
  CoupledSimulator::Options opts;
  opts.coupled = true;
  opts.flux_scale = cfg.flux_scale;
  CoupledSimulator sim(std::move(heat), std::move(fluid), opts);
  SystemState init{sim.heat().uniform_state(cfg.params.t_cold),
                   sim.fluid().uniform_state(1.0, cfg.params.t_cold)};
  return Scenario{cfg.scenario, std::move(sim), std::move(init), cfg.sim};
}

}  // namespace

Scenario build_scenario(const RunConfig& cfg) {
  cfg.validate();
  const auto& p = cfg.params;
  if (cfg.scenario == "equilibrium") {
    auto sc = coupled_scenario(cfg, HeatBoundary{WallCondition::temperature_port, std::nullopt});
    sc.initial = sc.simulator.make_consistent(std::move(sc.initial));
    return sc;
  }
  if (cfg.scenario == "hot-wall-cooldown") {
    auto sc = coupled_scenario(cfg, HeatBoundary{WallCondition::temperature_port, std::nullopt});
    const auto& dom = sc.simulator.heat().domain();
    const auto& g = cfg.geometry;
    for (std::size_t k = 0; k < dom.thickness().n_nodes(); ++k)
      for (std::size_t i = 0; i < dom.axial().n_nodes(); ++i)
        for (std::size_t j = 0; j < dom.azimuthal().n_nodes(); ++j) {
          const auto x = dom.node(i, j, k);
          const double t = p.t_cold + (p.t_hot - p.t_cold) * hot_profile(g, x[0], x[2] - dom.thickness().start());
          sc.initial.heat.s[dom.index(i, j, k)] = entropy_of_temperature(t, cfg.heat);
        }
    sc.initial = sc.simulator.make_consistent(std::move(sc.initial));
    return sc;
  }
  if (cfg.scenario == "heated-ext-face") {
    auto sc = coupled_scenario(cfg, HeatBoundary{WallCondition::temperature_port, p.t_ext});
    sc.initial = sc.simulator.make_consistent(std::move(sc.initial));
    return sc;
  }
  if (cfg.scenario == "acoustic-pulse") {
    FluidMaterial mat = cfg.fluid;
    mat.friction = 0.0;
    FluidModel fluid(channel_of(cfg.geometry, p.acoustic_cells), mat);
    CoupledSimulator::Options opts;
    opts.coupled = false;
    CoupledSimulator sim(std::nullopt, std::move(fluid), opts);
    SystemState init;
    init.fluid = sim.fluid().uniform_state(1.0, p.t_cold);
    const auto& mesh = sim.fluid().mesh();
    const double zc = 0.5 * (mesh.start() + mesh.end());
    const double w = p.pulse_width * mesh.length();
    for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
      const double d = (mesh.node(i) - zc) / w;
      init.fluid.phi[i] = 1.0 - p.pulse_amplitude * std::exp(-0.5 * d * d);
    }
    return Scenario{cfg.scenario, std::move(sim), std::move(init), cfg.sim};
  }
  std::string valid;
  for (const auto& n : scenario_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown scenario '" + cfg.scenario + "'; valid names: " + valid);
}

void write_solid_snapshot(std::ostream& os, const HeatModel& heat, const HeatState& state) {
  os << "node,x,y,z,s,T\n";
  const auto& dom = heat.domain();
  for (std::size_t n = 0; n < heat.n_nodes(); ++n) {
    const auto x = dom.node(n);
    os << n << ',';
    write_csv_row(os, std::vector<double>{x[0], x[1], x[2], state.s[n],
                                          temperature_of_entropy(state.s[n], heat.material())});
  }
}

void write_fluid_snapshot(std::ostream& os, const FluidModel& fluid, const FluidState& state) {
  os << "node,z,phi,vel,s,T,p\n";
  for (std::size_t n = 0; n < fluid.n_nodes(); ++n) {
    const auto e = eos(state.phi[n], state.s[n], fluid.material());
    os << n << ',';
    write_csv_row(os, std::vector<double>{fluid.mesh().node(n), state.phi[n], state.vel[n], state.s[n], e.t, e.p});
  }
}

ScenarioOutput run_scenario(const RunConfig& cfg, const std::filesystem::path& output_dir) {
  auto sc = build_scenario(cfg);
  ScenarioOutput out;
  const bool write = !output_dir.empty();
  if (write) std::filesystem::create_directories(output_dir);

  const auto& sim = sc.simulator;
  const SnapshotSink sink = [&](int step, double, const SystemState& s) {
    if (!write) return;
    if (sim.has_heat()) {
      auto path = output_dir / (sc.name + "_solid_" + std::to_string(step) + ".csv");
      std::ofstream f(path);
      write_solid_snapshot(f, sim.heat(), s.heat);
      out.files.push_back(path);
    }
    if (sim.has_fluid()) {
      auto path = output_dir / (sc.name + "_fluid_" + std::to_string(step) + ".csv");
      std::ofstream f(path);
      write_fluid_snapshot(f, sim.fluid(), s.fluid);
      out.files.push_back(path);
    }
  };

  // Step manually so a partial ledger survives a failure.
  sc.sim.validate();
  RunResult& res = out.result;
  res.final_state = sc.initial;
  res.ledger.records.push_back(sim.measure(res.final_state, 0.0));
  const auto& first = res.ledger.records.front();
  res.ledger.scale = std::max(1.0, std::abs(first.q_heat) + std::abs(first.h_fluid));
  if (sc.sim.output_every > 0) sink(0, 0.0, res.final_state);

  const auto flush = [&] {
    if (!write) return;
    auto path = output_dir / (sc.name + "_ledger.csv");
    std::ofstream f(path);
    res.ledger.write_csv(f);
    out.files.push_back(path);
  };
  const int n = sc.sim.n_steps();
  try {
    for (int k = 1; k <= n; ++k) {
      auto st = sim.step(res.final_state, sc.sim.dt * (k - 1), sc.sim);
      st.record.time = sc.sim.dt * k;
      res.final_state = std::move(st.state);
      res.ledger.records.push_back(st.record);
      res.steps = k;
      if (sc.sim.output_every > 0 && (k % sc.sim.output_every == 0 || k == n))
        sink(k, st.record.time, res.final_state);
    }
  } catch (const Error&) {
    flush();
    throw;
  }
  flush();
  return out;
}

std::vector<VerificationReport> run_verification(const RunConfig& cfg) {
  cfg.validate();
  const DiracCoupling coupling(solid_of(cfg.geometry).coupling_face());
  std::vector<VerificationReport> reports;
  reports.push_back(check_adjointness(coupling, cfg.trials, cfg.seed));
  reports.push_back(check_dirac_pairing(coupling, cfg.trials, cfg.seed));
  reports.push_back(operator_norm_bound_check(coupling, cfg.trials, cfg.seed));
  reports.push_back(check_transpose(coupling.operators()));
  reports.push_back(check_power_balance(coupling, cfg.trials, cfg.seed));
  return reports;
}

const char* ConvergenceReport::csv_header() { return "kind,level,dt,n_ax,n_az,n_th,drift_per_time,observed_order"; }

void ConvergenceReport::write_csv(std::ostream& os) const {
  os << csv_header() << '\n';
  for (const auto& r : rows) {
    os << r.kind << ',' << r.level << ',' << format_double(r.dt) << ',' << r.n_ax << ',' << r.n_az << ',' << r.n_th
       << ',' << format_double(r.drift_per_time) << ',';
    if (!std::isnan(r.observed_order)) os << format_double(r.observed_order);
    os << '\n';
  }
}

std::vector<double> ConvergenceReport::temporal_orders() const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.kind == "time" && r.level > 0) out.push_back(r.observed_order);
  return out;
}

namespace {

double drift_per_time(const RunConfig& cfg) {
  const auto out = run_scenario(cfg);
  return out.result.ledger.final_drift() / (cfg.sim.dt * out.result.steps);
}

double order(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log2(coarse / fine);
}

}  // namespace

ConvergenceReport run_convergence(const RunConfig& base) {
  RunConfig cfg = base;
  cfg.scenario = "hot-wall-cooldown";
  cfg.sim.output_every = 0;
  cfg.validate();
  ConvergenceReport rep;
  const auto& g = cfg.geometry;

  double prev = 0.0;
  for (int level = 0; level < 3; ++level) {
    RunConfig c = cfg;
    c.sim.dt = cfg.sim.dt / std::ldexp(1.0, level);
    c.sim.t_end = cfg.sim.t_end;
    const double d = drift_per_time(c);
    rep.rows.push_back({"time", level, c.sim.dt, g.n_ax, g.n_az, g.n_th, d,
                        level == 0 ? std::numeric_limits<double>::quiet_NaN() : order(prev, d)});
    prev = d;
  }
  prev = rep.rows.front().drift_per_time;
  {
    RunConfig c = cfg;
    c.geometry.n_ax *= 2;
    c.geometry.n_az *= 2;
    c.geometry.n_th *= 2;
    c.geometry.n_fluid *= 2;
    const double d = drift_per_time(c);
    rep.rows.push_back({"mesh", 0, cfg.sim.dt, g.n_ax, g.n_az, g.n_th, prev,
                        std::numeric_limits<double>::quiet_NaN()});
    rep.rows.push_back({"mesh", 1, cfg.sim.dt, c.geometry.n_ax, c.geometry.n_az, c.geometry.n_th, d, order(prev, d)});
  }

  const auto face = solid_of(g).coupling_face();
  const TensorBoundary fine(face.gamma1(), face.gamma2().refined());
  const DiracCoupling coarse_c(face), fine_c(fine);
  FieldGenerator gen(cfg.seed);
  const Eigen::VectorXd axial = gen.vector(static_cast<Eigen::Index>(face.gamma1().n_nodes()));
  LineField y{axial};
  const auto w_coarse = resolve_ports(SurfaceField{coarse_c.embed(y).values}, y, coarse_c).w_in.values;
  const auto w_fine = resolve_ports(SurfaceField{fine_c.embed(y).values}, y, fine_c).w_in.values;
  rep.azimuthal_w_change = (w_coarse - w_fine).cwiseAbs().maxCoeff();
  return rep;
}

AcousticMeasurement measure_acoustic_speed(const RunConfig& base) {
  RunConfig cfg = base;
  cfg.scenario = "acoustic-pulse";
  auto sc = build_scenario(cfg);
  const auto& fluid = sc.simulator.fluid();
  const auto& mesh = fluid.mesh();
  const auto& mat = fluid.material();
  const double phi0 = 1.0;
  const double s0 = sc.initial.fluid.s.front();
  const double c0 = acoustic_speed(phi0, s0, mat);
  const double p0 = eos(phi0, s0, mat).p;
  const double zc = 0.5 * (mesh.start() + mesh.end());
  const double width = cfg.params.pulse_width * mesh.length();

  SimConfig sim = cfg.sim;
  sim.dt = std::min(cfg.sim.dt, 0.5 * mesh.cell_width() / c0);
  const double t_probe = 0.25 * mesh.length() / c0;
  const int n = static_cast<int>(std::ceil(t_probe / sim.dt));

  auto peak = [&](const FluidState& st) {
    std::size_t best = mesh.n_nodes() / 2 + 1;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = best; i + 1 < mesh.n_nodes(); ++i) {
      const double v = eos(st.phi[i], st.s[i], mat).p - p0;
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    const double l = eos(st.phi[best - 1], st.s[best - 1], mat).p - p0;
    const double r = eos(st.phi[best + 1], st.s[best + 1], mat).p - p0;
    const double denom = l - 2.0 * best_v + r;
    const double shift = denom != 0.0 ? 0.5 * (l - r) / denom : 0.0;
    return mesh.node(best) + shift * mesh.cell_width();
  };

  std::vector<double> ts, zs;
  SystemState state = sc.initial;
  for (int k = 1; k <= n; ++k) {
    state = sc.simulator.step(state, sim.dt * (k - 1), sim).state;
    const double t = sim.dt * k;
    const double z = peak(state.fluid);
    if (z > zc + 2.0 * width) {
      ts.push_back(t);
      zs.push_back(z);
    }
  }
  if (ts.size() < 2) throw Error("acoustic pulse did not separate; widen the channel or narrow the pulse");

  const double nt = static_cast<double>(ts.size());
  double mt = 0.0, mz = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i] / nt;
    mz += zs[i] / nt;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - mt) * (zs[i] - mz);
    sxx += (ts[i] - mt) * (ts[i] - mt);
  }
  AcousticMeasurement m;
  m.speed = sxy / sxx;
  m.expected = c0;
  m.relative_error = std::abs(m.speed - c0) / c0;
  return m;
}

}  // namespace phc
