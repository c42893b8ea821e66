#include <benchmark/benchmark.h>

#include "phc/scenario.hpp"

namespace {

phc::RunConfig demo(int n_ax) {
  phc::RunConfig cfg;
  cfg.geometry.n_ax = cfg.geometry.n_fluid = n_ax;
  cfg.geometry.n_az = n_ax / 2;
  cfg.geometry.n_th = n_ax / 4;
  cfg.sim.output_every = 0;
  return cfg;
}

void BM_CoupledStep(benchmark::State& state) {
  const auto cfg = demo(static_cast<int>(state.range(0)));
  auto sc = phc::build_scenario(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sc.simulator.step(sc.initial, 0.0, sc.sim));
  state.counters["unknowns"] = static_cast<double>(sc.simulator.n_unknowns());
  state.counters["colors"] = sc.simulator.jacobian().n_colors();
}
BENCHMARK(BM_CoupledStep)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_AcousticStep(benchmark::State& state) {
  auto cfg = demo(16);
  cfg.scenario = "acoustic-pulse";
  cfg.params.acoustic_cells = static_cast<int>(state.range(0));
  auto sc = phc::build_scenario(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sc.simulator.step(sc.initial, 0.0, sc.sim));
}
BENCHMARK(BM_AcousticStep)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
