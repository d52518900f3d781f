// Microbenchmarks for the hot paths: generator assembly, factorization, the
// per-orientation engine step, the full per-configuration chain, and one
// disorder-averaged point at the resolution floor.

#include <benchmark/benchmark.h>

#include "cbs/oracle.hpp"
#include "cbs/sweep.hpp"

namespace {

const cbs::DriveParams kDrive = cbs::DriveParams::from_saturation(1.0, 0.0);
const cbs::Vec3 kDir = cbs::Vec3(0.3, -0.5, 0.81).normalized();

void BM_BuildUncoupledGenerator(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cbs::build_uncoupled_liouvillian(kDrive));
}
BENCHMARK(BM_BuildUncoupledGenerator)->Unit(benchmark::kMillisecond);

void BM_FactorizeGenerator(benchmark::State& state) {
  const cbs::Superoperator L0 = cbs::build_uncoupled_liouvillian(kDrive);
  for (auto _ : state) benchmark::DoNotOptimize(cbs::BorderedSteadySolver(L0));
}
BENCHMARK(BM_FactorizeGenerator)->Unit(benchmark::kMillisecond);

void BM_SolverSetup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cbs::PerturbativeSolver(kDrive));
}
BENCHMARK(BM_SolverSetup)->Unit(benchmark::kMillisecond);

void BM_OrientationAmplitudes(benchmark::State& state) {
  const cbs::PerturbativeSolver solver(kDrive);
  for (auto _ : state) benchmark::DoNotOptimize(solver.amplitudes_for(kDir));
}
BENCHMARK(BM_OrientationAmplitudes)->Unit(benchmark::kMillisecond);

void BM_StateForConfiguration(benchmark::State& state) {
  const cbs::PerturbativeSolver solver(kDrive);
  const cbs::Configuration config(1000.37, kDir);
  for (auto _ : state) benchmark::DoNotOptimize(solver.state_for(config));
}
BENCHMARK(BM_StateForConfiguration)->Unit(benchmark::kMillisecond);

void BM_DirectPerturbativeChain(benchmark::State& state) {
  const cbs::Configuration config(1000.37, kDir);
  const cbs::Superoperator L0 = cbs::build_single_atom_liouvillian(kDrive, config);
  const cbs::CouplingBlocks blocks(config, kDrive.gamma);
  for (auto _ : state) benchmark::DoNotOptimize(cbs::solve_perturbative(L0, blocks));
}
BENCHMARK(BM_DirectPerturbativeChain)->Unit(benchmark::kMillisecond);

void BM_ExactSteadyState(benchmark::State& state) {
  const cbs::Configuration config(1000.37, kDir);
  const cbs::Superoperator L0 = cbs::build_single_atom_liouvillian(kDrive, config);
  const auto [A, B] = cbs::build_coupling_blocks(config, kDrive.gamma);
  const cbs::Superoperator L = cbs::assemble_full_liouvillian(L0, A, B, config.coupling());
  for (auto _ : state) benchmark::DoNotOptimize(cbs::exact_steady_state(L));
}
BENCHMARK(BM_ExactSteadyState)->Unit(benchmark::kMillisecond);

void BM_PointAverageFloorResolution(benchmark::State& state) {
  const cbs::PerturbativeSolver solver(kDrive);
  cbs::AverageSpec avg;
  avg.n_orient = 64;
  avg.n_radial = 16;
  cbs::EngineOptions opt;
  opt.with_error = false;
  for (auto _ : state) benchmark::DoNotOptimize(solver.point_average(avg, {}, opt));
}
BENCHMARK(BM_PointAverageFloorResolution)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
