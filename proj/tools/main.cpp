#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "phc/errors.hpp"

int main(int argc, char** argv) {
  using namespace phc::cli;
  CLI::App app{"Coupled heat/fluid port-Hamiltonian simulator"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--output", o.output_dir, "Output directory (overrides output_dir)");
  app.add_option("--seed", o.seed, "Seed for verification trials");
  app.add_option("--trials", o.trials, "Random trials per verification check");

  auto* verify = app.add_subcommand("verify", "Run the structural checks of the coupling operators");
  auto* simulate = app.add_subcommand("simulate", "Run the configured scenario and write CSV output");
  auto* convergence = app.add_subcommand("convergence", "Step-halving and mesh-refinement study");
  for (auto* sub : {verify, simulate, convergence}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    const auto cfg = resolve_config(o);
    if (verify->parsed()) return cmd_verify(cfg, std::cout);
    if (simulate->parsed()) return cmd_simulate(cfg, std::cout, std::cerr);
    return cmd_convergence(cfg, std::cout);
  } catch (const phc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return usage;
  } catch (const phc::CouplingError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return usage;
  } catch (const phc::MaterialError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return usage;
  } catch (const phc::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
}
