#include <benchmark/benchmark.h>

#include <vector>

#include "emostock/rng.hpp"
#include "emostock/stats.hpp"

using namespace emostock;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.next_normal();
  return v;
}

void BM_Pearson(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
  const auto y = noise(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pearson(x, y));
  }
}
BENCHMARK(BM_Pearson)->Arg(191)->Arg(1000)->Arg(10000);

void BM_FCdf(benchmark::State& state) {
  const int d1 = static_cast<int>(state.range(0));
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_cdf(x, d1, 180));
    x = x > 8.0 ? 0.3 : x + 0.37;
  }
}
BENCHMARK(BM_FCdf)->Arg(1)->Arg(3)->Arg(5);

void BM_GrangerTest(benchmark::State& state) {
  const int lag = static_cast<int>(state.range(0));
  const auto y = noise(200, 3);
  const auto x = noise(200, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(granger_test(y, x, lag));
  }
}
BENCHMARK(BM_GrangerTest)->Arg(1)->Arg(3)->Arg(5);

void BM_BootstrapCorrelation(benchmark::State& state) {
  const auto x = noise(191, 5);
  const auto y = noise(191, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bootstrap_correlation(x, y, 100, 150, 7));
  }
}
BENCHMARK(BM_BootstrapCorrelation);

void BM_OlsFit(benchmark::State& state) {
  const std::size_t rows = 190;
  const std::size_t cols = static_cast<std::size_t>(state.range(0));
  Rng rng(8);
  Matrix design(rows, cols);
  for (auto& v : design.data()) v = rng.next_normal();
  for (std::size_t r = 0; r < rows; ++r) design.at(r, 0) = 1.0;
  const auto y = noise(rows, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ols_fit(design, y));
  }
}
BENCHMARK(BM_OlsFit)->Arg(3)->Arg(11);

}  // namespace

BENCHMARK_MAIN();
