#include <benchmark/benchmark.h>

#include <random>

#include "scabench/stat_tests.hpp"

using namespace scabench;

namespace {

DetectionMatrix random_matrix(size_t instances) {
  std::mt19937 rng(77);
  DetectionMatrix m;
  m.tools = all_tools();
  for (size_t i = 0; i < instances; ++i) {
    std::vector<std::uint8_t> row;
    for (size_t t = 0; t < m.tools.size(); ++t)
      row.push_back(static_cast<std::uint8_t>(rng() % 2));
    m.rows.push_back(std::move(row));
  }
  return m;
}

void BM_McnemarExact(benchmark::State& state) {
  const long long n10 = state.range(0), n01 = state.range(0) - 10;
  for (auto _ : state) benchmark::DoNotOptimize(mcnemar_exact(n10, n01));
}
BENCHMARK(BM_McnemarExact)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMicrosecond);

void BM_CochranQ(benchmark::State& state) {
  const auto m = random_matrix(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cochran_q(m));
}
BENCHMARK(BM_CochranQ)->Arg(1000)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_PairwiseTable(benchmark::State& state) {
  const auto m = random_matrix(2000);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_table(m));
}
BENCHMARK(BM_PairwiseTable)->Unit(benchmark::kMillisecond);

void BM_ChisqTail(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chisq_upper_tail(x, 4));
    x = x > 1500 ? 0.5 : x * 1.01;
  }
}
BENCHMARK(BM_ChisqTail)->Unit(benchmark::kNanosecond);

}  // namespace

BENCHMARK_MAIN();
