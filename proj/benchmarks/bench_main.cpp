#include <benchmark/benchmark.h>

#include <random>

#include "infext/measures.hpp"
#include "infext/process.hpp"
#include "infext/vladimirov.hpp"

using namespace infext;

namespace {

SpacePtr space(int depth) {
  static auto F = TowerField::realize(build_unramified_tower(2, {1, 2}));
  return CylinderSpace::make(F, 2, depth);
}

CylFunction random_function(const SpacePtr& S) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> N;
  CylFunction f = CylFunction::constant(S, 0.0);
  for (auto& v : f.values) v = {N(rng), N(rng)};
  return f;
}

void BM_SpaceConstruction(benchmark::State& state) {
  auto F = TowerField::realize(build_unramified_tower(2, {1, 2}));
  for (auto _ : state) benchmark::DoNotOptimize(CylinderSpace::make(F, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SpaceConstruction)->Arg(2)->Arg(3)->Arg(4);

void BM_ApplySpectral(benchmark::State& state) {
  auto f = random_function(space(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(apply_spectral(1.0, f));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.values.size()));
}
BENCHMARK(BM_ApplySpectral)->Arg(2)->Arg(3)->Arg(4);

void BM_ApplyHypersingular(benchmark::State& state) {
  auto f = random_function(space(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(apply_hypersingular(1.0, f));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.values.size()));
}
BENCHMARK(BM_ApplyHypersingular)->Arg(2)->Arg(3);

void BM_HeatCylinder(benchmark::State& state) {
  Tower T = build_unramified_tower(2, {1, 2, 6, 24});
  for (auto _ : state) benchmark::DoNotOptimize(heat_cylinder(T, 4, 1, 1.0, 1.0));
}
BENCHMARK(BM_HeatCylinder);

void BM_MonteCarloPaths(benchmark::State& state) {
  auto F = TowerField::realize(build_unramified_tower(2, {1}));
  auto lambda = ExtElement::from_rational(F, 1, mpq_class(1, 2));
  const auto paths = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_characteristic(lambda, 1.0, 1.0, 0.5, paths, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloPaths)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
