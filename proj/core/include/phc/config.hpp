#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "phc/fluid.hpp"
#include "phc/heat.hpp"
#include "phc/simulator.hpp"

namespace phc {

struct GeometryConfig {
  double a = 0.0;
  double b = 1.0;
  double circumference = 1.0;
  double depth = 0.25;
  int n_ax = 16;
  int n_az = 8;
  int n_th = 4;
  int n_fluid = 16;  ///< channel cells; must equal n_ax
};

struct ScenarioParams {
  double t_cold = 1.0;            ///< coolant (and wall) temperature
  double t_hot = 1.5;             ///< peak solid temperature in hot-wall-cooldown
  double t_ext = 1.5;             ///< gas temperature on Gamma_ext in heated-ext-face
  double pulse_amplitude = 1e-3;  ///< relative compression of the acoustic pulse
  double pulse_width = 0.05;      ///< Gaussian standard deviation, in units of channel length
  int acoustic_cells = 128;
};

struct RunConfig {
  GeometryConfig geometry;
  HeatMaterial heat{8.0, 0.5, 0.5, 1.0};
  FluidMaterial fluid{1.0, 2.5, 0.5, 1.0, 0.0, 1.0};
  SimConfig sim{5e-3, 1.0, 1e-12, 20, 50};
  double flux_scale = 1.0;
  std::string scenario = "hot-wall-cooldown";
  ScenarioParams params;
  std::uint64_t seed = 42;
  int trials = 1000;
  std::string output_dir = "output";

  /// Cross-block checks: materials, SimConfig, trials >= 1, and n_ax == n_fluid
  /// (CouplingError "coupling-incompatibility" otherwise).
  void validate() const;
};

/// Parses a JSON document over the built-in defaults. Every block is optional; unknown
/// keys and type mismatches raise ConfigError naming the field, and syntax errors
/// report line and column.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// The effective configuration as JSON (round-trips through parse_config).
std::string to_json(const RunConfig& cfg);

}  // namespace phc
