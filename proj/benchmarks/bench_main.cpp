#include <benchmark/benchmark.h>

#include "zonoreach/fixtures.hpp"
#include "zonoreach/projsel.hpp"
#include "zonoreach/reduction.hpp"
#include "zonoreach/volume.hpp"

namespace {

using namespace zonoreach;

Zonotope random_zonotope(int n, int p, std::uint64_t seed) {
  Rng rng(seed);
  Vector c(n);
  Matrix g(n, p);
  for (int i = 0; i < n; ++i) c(i) = rng.normal();
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  return Zonotope(std::move(c), std::move(g));
}

void BM_GirardReduce(benchmark::State& state) {
  const Zonotope z = random_zonotope(5, static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    auto [reduced, report] = girard_reduce(z, 3.0);
    benchmark::DoNotOptimize(reduced.generators.data());
  }
}
BENCHMARK(BM_GirardReduce)->Arg(50)->Arg(500)->Arg(5000);

void BM_ExactVolume(benchmark::State& state) {
  const Zonotope z = random_zonotope(5, static_cast<int>(state.range(0)), 12);
  for (auto _ : state) {
    VolumeResult v = exact_volume(z);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_ExactVolume)->Arg(10)->Arg(15)->Arg(20);

void BM_DataDrivenStep(benchmark::State& state) {
  const Scenario s = fixtures::benchmark5d_scenario();
  const DataSet data = generate_data(s.system, s.x0, s.u, s.data);
  const IdentifiedModel model = identify(data, s.system.noise);
  for (auto _ : state) {
    Zonotope next = dd_step(model, s.x0, s.u, s.system.noise);
    benchmark::DoNotOptimize(next.generators.data());
  }
}
BENCHMARK(BM_DataDrivenStep);

void BM_ReachStep(benchmark::State& state) {
  const Scenario s = fixtures::benchmark5d_scenario();
  const DataSet data = generate_data(s.system, s.x0, s.u, s.data);
  const IdentifiedModel model = identify(data, s.system.noise);
  RunOptions options = s.run_options();
  options.horizon = 1;
  const Matrix P = Matrix::Identity(5, 5);
  for (auto _ : state) {
    ReachRun r = run(model, s.x0, s.u, s.system.noise, P, options);
    benchmark::DoNotOptimize(r.counts.data());
  }
}
BENCHMARK(BM_ReachStep);

void BM_L1Svd(benchmark::State& state) {
  const Scenario s = fixtures::benchmark5d_scenario();
  const DataSet data = generate_data(s.system, s.x0, s.u, s.data);
  const IdentifiedModel model = identify(data, s.system.noise);
  for (auto _ : state) {
    L1SvdResult r = l1_svd(model.msigma);
    benchmark::DoNotOptimize(r.P.data());
  }
}
BENCHMARK(BM_L1Svd);

void BM_MaxRotation(benchmark::State& state) {
  const Scenario s = fixtures::benchmark5d_scenario();
  const DataSet data = generate_data(s.system, s.x0, s.u, s.data);
  const IdentifiedModel model = identify(data, s.system.noise);
  for (auto _ : state) {
    MaxRotationResult r = max_rotation(model.msigma);
    benchmark::DoNotOptimize(r.P.data());
  }
}
BENCHMARK(BM_MaxRotation);

}  // namespace

BENCHMARK_MAIN();
