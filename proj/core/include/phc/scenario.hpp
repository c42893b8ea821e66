#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "phc/config.hpp"
#include "phc/report.hpp"
#include "phc/simulator.hpp"

namespace phc {

/// Built-in setups: equilibrium, hot-wall-cooldown, heated-ext-face, acoustic-pulse.
const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

struct Scenario {
  std::string name;
  CoupledSimulator simulator;
  SystemState initial;
  SimConfig sim;
};

/// Throws ConfigError listing the valid names for an unknown scenario.
Scenario build_scenario(const RunConfig& cfg);

void write_solid_snapshot(std::ostream& os, const HeatModel& heat, const HeatState& state);
void write_fluid_snapshot(std::ostream& os, const FluidModel& fluid, const FluidState& state);

struct ScenarioOutput {
  RunResult result;
  std::vector<std::filesystem::path> files;
};

/// Runs the configured scenario. Writes <scenario>_ledger.csv and
/// <scenario>_<solid|fluid>_<step>.csv into `output_dir` (created if missing) when it
/// is non-empty. On StepFailure the ledger written so far is still flushed.
ScenarioOutput run_scenario(const RunConfig& cfg, const std::filesystem::path& output_dir = {});

/// Adjointness, Dirac pairing, operator bound, transpose and power-balance checks on
/// the configured coupling face, with cfg.trials and cfg.seed.
std::vector<VerificationReport> run_verification(const RunConfig& cfg);

struct ConvergenceRow {
  std::string kind;  ///< "time" or "mesh"
  int level = 0;
  double dt = 0.0;
  int n_ax = 0;
  int n_az = 0;
  int n_th = 0;
  double drift_per_time = 0.0;
  double observed_order = 0.0;  ///< NaN on the coarsest level
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// max |w(refined) - w(coarse)| for an azimuthally constant v.
  double azimuthal_w_change = 0.0;

  static const char* csv_header();
  void write_csv(std::ostream& os) const;
  /// Observed orders between consecutive time levels.
  std::vector<double> temporal_orders() const;
};

/// hot-wall-cooldown at dt, dt/2, dt/4 on the configured mesh, and at dt on the mesh
/// with every cell count doubled.
ConvergenceReport run_convergence(const RunConfig& cfg);

struct AcousticMeasurement {
  double speed = 0.0;          ///< fitted from the right-going pressure peak
  double expected = 0.0;       ///< sqrt(gamma R T0) / phi0
  double relative_error = 0.0;
};

/// Tracks the acoustic-pulse peak until it has travelled a quarter channel.
AcousticMeasurement measure_acoustic_speed(const RunConfig& cfg);

}  // namespace phc
