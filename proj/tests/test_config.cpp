#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "phc/config.hpp"
#include "phc/csv.hpp"
#include "phc/errors.hpp"
#include "phc/scenario.hpp"

using namespace phc;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty document yields the defaults") {
  const auto cfg = parse_config("{}");
  CHECK(cfg.scenario == "hot-wall-cooldown");
  CHECK(cfg.geometry.n_ax == 16);
  CHECK(cfg.geometry.n_az == 8);
  CHECK(cfg.geometry.n_th == 4);
  CHECK(cfg.geometry.n_fluid == 16);
  CHECK(cfg.sim.dt == 0.005);
  CHECK(cfg.sim.n_steps() == 200);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("blocks override individual fields") {
  const auto cfg = parse_config(R"({
    "scenario": "equilibrium", "seed": 7, "trials": 12, "output_dir": "x",
    "geometry": {"n_ax": 4, "n_fluid": 4, "depth": 0.5},
    "heat": {"lambda": 2.0},
    "fluid": {"friction": 0.0},
    "sim": {"dt": 0.01, "t_end": 0.2},
    "coupling": {"flux_scale": 1.0},
    "scenario_params": {"t_hot": 3.0}
  })");
  CHECK(cfg.scenario == "equilibrium");
  CHECK(cfg.seed == 7);
  CHECK(cfg.trials == 12);
  CHECK(cfg.output_dir == "x");
  CHECK(cfg.geometry.n_ax == 4);
  CHECK(cfg.geometry.depth == 0.5);
  CHECK(cfg.geometry.n_az == 8);
  CHECK(cfg.heat.lambda == 2.0);
  CHECK(cfg.heat.rho == 8.0);
  CHECK(cfg.fluid.friction == 0.0);
  CHECK(cfg.sim.n_steps() == 20);
  CHECK(cfg.params.t_hot == 3.0);
}

TEST_CASE("round trip through JSON") {
  auto cfg = parse_config(R"({"geometry": {"circumference": 6.5}, "seed": 99})");
  const auto again = parse_config(to_json(cfg));
  CHECK(again.geometry.circumference == 6.5);
  CHECK(again.seed == 99);
  CHECK(to_json(again) == to_json(cfg));
}

TEST_CASE("diagnostics name the field or the position") {
  CHECK(message_of([] { parse_config(R"({"geometry": {"n_ax": "many"}})"); }).find("geometry.n_ax") != std::string::npos);
  CHECK(message_of([] { parse_config(R"({"heat": {"lamda": 1}})"); }).find("heat.lamda: unknown key") !=
        std::string::npos);
  CHECK(message_of([] { parse_config(R"({"seed": -4})"); }).find("seed") != std::string::npos);
  const auto syntax = message_of([] { parse_config("{\n  \"sim\": {\n    \"dt\": ,\n  }\n}"); });
  CHECK(syntax.find("line 3") != std::string::npos);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("mismatched meshes are a coupling incompatibility") {
  const auto cfg = parse_config(R"({"geometry": {"n_ax": 16, "n_fluid": 12}})");
  CHECK_THROWS_AS(cfg.validate(), CouplingError);
  CHECK(message_of([&] { cfg.validate(); }).find("coupling-incompatibility") != std::string::npos);
}

TEST_CASE("numeric constraints are delegated to the modules") {
  CHECK_THROWS_AS(parse_config(R"({"sim": {"dt": -1}})").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"heat": {"rho": 0}})").validate(), MaterialError);
  CHECK_THROWS_AS(parse_config(R"({"trials": 0})").validate(), ConfigError);
  CHECK_THROWS_AS(build_scenario(parse_config(R"({"geometry": {"depth": 0}})")), DomainError);
}

TEST_CASE("unknown scenario lists the valid names") {
  const auto msg = message_of([] { build_scenario(parse_config(R"({"scenario": "boil"})")); });
  for (const auto& n : scenario_names()) CHECK(msg.find(n) != std::string::npos);
  CHECK(is_scenario("acoustic-pulse"));
  CHECK_FALSE(is_scenario("boil"));
}

TEST_CASE("csv helpers round-trip doubles") {
  std::stringstream ss;
  write_csv_row(ss, std::vector<std::string>{"a", "b"});
  write_csv_row(ss, std::vector<double>{0.1, 1.0 / 3.0});
  const auto t = read_csv(ss);
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  CHECK(t.number(0, "b") == 1.0 / 3.0);
  CHECK(t.number(0, "a") == 0.1);
  CHECK_THROWS_AS(t.column("c"), Error);
  std::stringstream bad("a,b\n1\n");
  CHECK_THROWS_AS(read_csv(bad), Error);
}
