// Serial reference vs OpenMP kernels for the distance matrix and the
// criterion cross-check.

#include <benchmark/benchmark.h>

#include "riskmetric/audit.hpp"
#include "riskmetric/oracles.hpp"

using namespace riskmetric;

namespace {

std::vector<RiskMeasure> ensemble(std::size_t count) {
  const auto space = FiniteMetricSpace::validate_metric(
      {}, {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
  EnsembleSpec spec;
  spec.count = count;
  spec.seed = 1;
  spec.lattice = 0;
  return generate_ensemble(space, spec);
}

void BM_MatrixSerial(benchmark::State& state) {
  const auto ms = ensemble(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix_serial(ms));
}

void BM_MatrixParallel(benchmark::State& state) {
  const auto ms = ensemble(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(ms));
}

void BM_CrossCheck(benchmark::State& state) {
  oracles::CrossCheckOptions o;
  o.additive_instances = 50;
  o.choquet_instances = 50;
  o.dirac_instances = 20;
  for (auto _ : state) benchmark::DoNotOptimize(oracles::criterion_cross_check(o));
}

}  // namespace

BENCHMARK(BM_MatrixSerial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatrixParallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossCheck)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
