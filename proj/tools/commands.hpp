#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "phc/config.hpp"

namespace phc::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

struct Overrides {
  std::string config_path;
  std::string output_dir;
  std::optional<long long> seed;
  std::optional<int> trials;
};

/// Loads the config (defaults when no path), applies flag overrides and validates.
RunConfig resolve_config(const Overrides& o);

int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_convergence(const RunConfig& cfg, std::ostream& out);

}  // namespace phc::cli
