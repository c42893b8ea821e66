#include <benchmark/benchmark.h>

#include "phc/assembly.hpp"
#include "phc/coupling.hpp"
#include "phc/dirac.hpp"
#include "phc/quadrature.hpp"
#include "phc/random.hpp"

namespace {

phc::TensorBoundary face(int n) { return {phc::IntervalMesh(0, 1, n), phc::IntervalMesh(0, 1, n, true)}; }

void BM_SurfaceMass(benchmark::State& state) {
  const auto basis = phc::BasisSet::surface(face(static_cast<int>(state.range(0))));
  const auto q = phc::quadrature(3);
  for (auto _ : state) benchmark::DoNotOptimize(phc::assemble_mass(basis, q));
}
BENCHMARK(BM_SurfaceMass)->RangeMultiplier(2)->Range(8, 64);

void BM_VolumeStiffness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = phc::BasisSet::volume(phc::build_solid_domain(0, 1, 1, 0.25, n, n / 2, n / 4));
  for (auto _ : state) benchmark::DoNotOptimize(phc::assemble_stiffness(basis, [](auto) { return 1.0; }));
}
BENCHMARK(BM_VolumeStiffness)->RangeMultiplier(2)->Range(8, 32);

void BM_AssembleCoupling(benchmark::State& state) {
  const auto b = face(static_cast<int>(state.range(0)));
  const auto surf = phc::BasisSet::surface(b);
  const auto line = phc::BasisSet::interval(b.gamma1());
  const auto q = phc::quadrature(3);
  for (auto _ : state) benchmark::DoNotOptimize(phc::assemble_coupling(surf, line, q));
}
BENCHMARK(BM_AssembleCoupling)->RangeMultiplier(2)->Range(8, 64);

void BM_ResolvePorts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const phc::DiracCoupling c(face(n));
  phc::FieldGenerator gen(1);
  const phc::SurfaceField v{gen.vector(static_cast<Eigen::Index>(c.n_psi()))};
  const phc::LineField y{gen.vector(static_cast<Eigen::Index>(c.n_chi()))};
  for (auto _ : state) benchmark::DoNotOptimize(phc::resolve_ports(v, y, c));
}
BENCHMARK(BM_ResolvePorts)->RangeMultiplier(2)->Range(8, 64);

}  // namespace
