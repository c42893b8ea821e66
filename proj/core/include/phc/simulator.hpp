#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "phc/coupling.hpp"
#include "phc/fluid.hpp"
#include "phc/heat.hpp"
#include "phc/newton.hpp"

namespace phc {

struct SimConfig {
  double dt = 5e-3;
  double t_end = 1.0;
  double newton_tol = 1e-12;
  int newton_max_iters = 20;
  int output_every = 0;  ///< snapshot cadence in steps; 0 disables snapshots

  /// Throws ConfigError unless dt > 0, t_end >= dt, newton_tol > 0, newton_max_iters >= 1.
  void validate() const;
  int n_steps() const;
};

struct SystemState {
  HeatState heat;
  FluidState fluid;
};

/// One ledger row. Power columns hold midpoint values of the step that ends at `time`
/// (zero on the initial row).
struct LedgerRecord {
  double time = 0.0;
  double q_heat = 0.0;
  double h_fluid = 0.0;
  double total = 0.0;
  double p_couple_heat = 0.0;
  double p_couple_fluid = 0.0;
  double p_couple_residual = 0.0;
  double p_ext = 0.0;
  double s_solid = 0.0;
  double s_fluid = 0.0;
  int newton_iterations = 0;
  double newton_residual = 0.0;
};

struct EnergyLedger {
  std::vector<LedgerRecord> records;
  double scale = 1.0;  ///< max(1, |Q_heat| + |H_fluid|) at t = 0

  static const char* csv_header();
  void write_csv(std::ostream& os) const;

  /// |total(t_n) - total(t_0) - sum dt P_ext| at the final record.
  double final_drift() const;
  double max_coupling_residual() const;
  /// Most negative per-step change of S_solid + S_fluid (0 if never decreasing).
  double worst_entropy_decrease() const;
};

using SnapshotSink = std::function<void(int step, double time, const SystemState& state)>;

struct RunResult {
  EnergyLedger ledger;
  SystemState final_state;
  int steps = 0;
};

/// Monolithic implicit-midpoint integrator for any combination of heat and fluid
/// subsystems. When coupled, the wall temperature of the solid is the embedded fluid
/// temperature (u = B y) and the fluid receives w = -A v, resolved inside every
/// Newton residual evaluation.
class CoupledSimulator {
 public:
  struct Options {
    bool coupled = true;
    double flux_scale = 1.0;
    /// Wall temperature when the wall is a temperature port but no fluid drives it.
    std::optional<double> wall_temperature;
  };

  CoupledSimulator(std::optional<HeatModel> heat, std::optional<FluidModel> fluid, Options options);

  bool has_heat() const noexcept { return heat_.has_value(); }
  bool has_fluid() const noexcept { return fluid_.has_value(); }
  bool coupled() const noexcept { return options_.coupled; }
  const HeatModel& heat() const { return heat_.value(); }
  const FluidModel& fluid() const { return fluid_.value(); }
  const DiracCoupling& coupling() const { return coupling_.value(); }
  const Options& options() const noexcept { return options_; }
  Eigen::Index n_unknowns() const noexcept { return n_unknowns_; }
  const ColoredJacobian& jacobian() const noexcept { return *jacobian_; }

  /// Overwrites Dirichlet entropies (wall from the fluid temperature or the fixed wall
  /// temperature, external face from its prescribed temperature).
  SystemState make_consistent(SystemState state) const;

  LedgerRecord measure(const SystemState& state, double time) const;

  struct StepResult {
    SystemState state;
    LedgerRecord record;
  };
  /// Throws StepFailure when Newton does not reach cfg.newton_tol.
  StepResult step(const SystemState& state, double time, const SimConfig& cfg) const;

  RunResult run(SystemState initial, const SimConfig& cfg, const SnapshotSink& sink = {}) const;

 private:
  struct Diagnostics {
    CouplingPower power;
    double p_ext = 0.0;
  };

  Eigen::VectorXd pack(const SystemState& state) const;
  SystemState unpack(const Eigen::VectorXd& x, const SystemState& base) const;
  void apply_dirichlet(SystemState& state) const;
  void midpoint_residual(const SystemState& s0, const SystemState& s1, double dt, Eigen::VectorXd* residual,
                         Diagnostics* diag) const;
  void build_pattern();

  std::optional<HeatModel> heat_;
  std::optional<FluidModel> fluid_;
  std::optional<DiracCoupling> coupling_;
  Options options_;

  std::vector<std::size_t> heat_free_;   // unknown k -> heat node
  std::vector<Eigen::Index> heat_slot_;  // heat node -> unknown or -1
  bool wall_dirichlet_ = false;
  Eigen::Index fluid_offset_ = 0;
  Eigen::Index n_unknowns_ = 0;
  std::optional<ColoredJacobian> jacobian_;
};

}  // namespace phc
