// Serial vs OpenMP kernels on the workloads the verification suite runs.

#include <benchmark/benchmark.h>

#include "spikebasis/bestbasis.hpp"
#include "spikebasis/kernels.hpp"
#include "spikebasis/processes.hpp"

using namespace spikebasis;

namespace {

const NodeCosts& spike_costs(int n0) {
  static std::vector<NodeCosts> cache;
  if (cache.empty())
    for (int k = 1; k <= 5; ++k) cache.push_back(node_costs_exact_spike(k, CostSpec::entropy_exact()));
  return cache[static_cast<std::size_t>(n0 - 1)];
}

void BM_ScanCoversSerial(benchmark::State& state) {
  const auto& costs = spike_costs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::scan_covers_serial(costs.values, costs.max_level));
}

void BM_ScanCoversParallel(benchmark::State& state) {
  const auto& costs = spike_costs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::scan_covers_parallel(costs.values, costs.max_level));
}

Eigen::MatrixXd uniform_block(Index cols) { return sample_uniform2d(static_cast<int>(cols) * 32, 7).samples.reshaped(64, cols); }

void BM_LpSerial(benchmark::State& state) {
  const Eigen::MatrixXd y = uniform_block(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::per_sample_lp_serial(y, 0.5));
}

void BM_LpParallel(benchmark::State& state) {
  const Eigen::MatrixXd y = uniform_block(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::per_sample_lp_parallel(y, 0.5));
}

void BM_AnalyzeSerial(benchmark::State& state) {
  const Eigen::MatrixXd x = uniform_block(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::analyze_batch_serial(x, 6));
}

void BM_AnalyzeParallel(benchmark::State& state) {
  const Eigen::MatrixXd x = uniform_block(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::analyze_batch_parallel(x, 6));
}

}  // namespace

BENCHMARK(BM_ScanCoversSerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanCoversParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LpSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_LpParallel)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_AnalyzeSerial)->Arg(1 << 10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeParallel)->Arg(1 << 10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
