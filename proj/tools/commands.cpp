#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "phc/errors.hpp"
#include "phc/scenario.hpp"

namespace phc::cli {

RunConfig resolve_config(const Overrides& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  if (o.seed) {
    if (*o.seed < 0) throw ConfigError("--seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.trials) cfg.trials = *o.trials;
  cfg.validate();
  return cfg;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto reports = run_verification(cfg);
  bool all = true;
  out << std::scientific << std::setprecision(3);
  for (const auto& r : reports) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  trials=" << r.trials << "  max_residual=" << r.max_residual
        << "  tolerance=" << r.tolerance << '\n';
    all = all && r.passed;
  }
  return all ? ok : failure;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!is_scenario(cfg.scenario)) build_scenario(cfg);  // throws with the valid names
  const std::filesystem::path dir = cfg.output_dir;
  try {
    const auto res = run_scenario(cfg, dir);
    const auto& ledger = res.result.ledger;
    const auto& last = ledger.records.back();
    out << std::setprecision(10);
    out << "scenario " << cfg.scenario << ": " << res.result.steps << " steps to t = " << last.time << '\n';
    out << "total energy " << ledger.records.front().total << " -> " << last.total
        << "  drift " << ledger.final_drift() << '\n';
    out << "max coupling residual " << ledger.max_coupling_residual() << "  worst entropy change "
        << ledger.worst_entropy_decrease() << '\n';
    out << "wrote " << res.files.size() << " files to " << dir.string() << '\n';
    return ok;
  } catch (const StepFailure& e) {
    err << "error: " << e.what() << '\n';
    const auto ledger_path = dir / (cfg.scenario + "_ledger.csv");
    std::ifstream in(ledger_path);
    std::string line, last;
    while (std::getline(in, line))
      if (!line.empty()) last = line;
    if (!last.empty()) err << "last ledger row: " << last << '\n';
    err << "last residual: " << e.last_residual() << '\n';
    return failure;
  }
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out) {
  const auto rep = run_convergence(cfg);
  const std::filesystem::path dir = cfg.output_dir;
  std::filesystem::create_directories(dir);
  const auto path = dir / "convergence.csv";
  {
    std::ofstream f(path);
    rep.write_csv(f);
  }
  rep.write_csv(out);
  bool all = true;
  for (double p : rep.temporal_orders()) {
    const bool pass = p >= 1.5 && p <= 2.5;
    out << (pass ? "PASS" : "FAIL") << " temporal order " << p << " in [1.5, 2.5]\n";
    all = all && pass;
  }
  const bool az = rep.azimuthal_w_change <= 1e-12;
  out << (az ? "PASS" : "FAIL") << " azimuthal refinement changes w by " << rep.azimuthal_w_change << '\n';
  out << "wrote " << path.string() << '\n';
  return all && az ? ok : failure;
}

}  // namespace phc::cli
