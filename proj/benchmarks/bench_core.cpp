#include <benchmark/benchmark.h>

#include <random>

#include "sqgfront/calculus.hpp"
#include "sqgfront/energy.hpp"
#include "sqgfront/evolution.hpp"
#include "sqgfront/initial_data.hpp"

using namespace sqgfront;

namespace {

PeriodicField data(int n) { return power_law(SpectralSpace(n), 4.0, 1, 0.05); }

void BM_Flux(benchmark::State& state) {
  const PeriodicField phi = data(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(flux(phi));
}
BENCHMARK(BM_Flux)->RangeMultiplier(2)->Range(16, 256);

void BM_Paraproduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PeriodicField u = data(n), v = power_law(SpectralSpace(n), 2.0, 2);
  const WeylParaproduct para;
  for (auto _ : state) benchmark::DoNotOptimize(para.apply(u, v));
}
BENCHMARK(BM_Paraproduct)->RangeMultiplier(2)->Range(16, 256);

void BM_WeightBuild(benchmark::State& state) {
  const PeriodicField phi = data(static_cast<int>(state.range(0)));
  const WeylParaproduct para;
  for (auto _ : state) benchmark::DoNotOptimize(WeightOperator::build(phi, 9.0, para));
}
BENCHMARK(BM_WeightBuild)->RangeMultiplier(2)->Range(16, 128);

void BM_EnergyReport(benchmark::State& state) {
  const PeriodicField phi = data(static_cast<int>(state.range(0)));
  const WeylParaproduct para;
  for (auto _ : state) benchmark::DoNotOptimize(energy_report(phi, 4.0, para));
}
BENCHMARK(BM_EnergyReport)->RangeMultiplier(2)->Range(16, 128);

void BM_Step(benchmark::State& state) {
  SolverConfig cfg;
  cfg.N = static_cast<int>(state.range(0));
  cfg.integrator = state.range(1) == 0 ? Integrator::ifrk4 : Integrator::rk4;
  const Stepper stepper(cfg);
  PeriodicField phi = exp_cos(cfg.space(), 0.05);
  const double h = cfg.time_step();
  for (auto _ : state) phi = stepper.step(phi, h);
  benchmark::DoNotOptimize(phi);
}
BENCHMARK(BM_Step)->ArgsProduct({{16, 64, 256}, {0, 1}});

}  // namespace
BENCHMARK_MAIN();
