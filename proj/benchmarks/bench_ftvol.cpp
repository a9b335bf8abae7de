#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "ftvol/ftvol.hpp"

using namespace ftvol;

namespace {

ReturnSeries returns(std::size_t length) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal(0.0, 0.01);
  std::vector<double> values(length);
  for (auto& v : values) v = normal(rng);
  return ReturnSeries(std::move(values));
}

void BM_FtVolatility(benchmark::State& state) {
  const auto r = returns(4040);
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ft_volatility(r, horizon));
  state.SetItemsProcessed(state.iterations() * r.size());
}
BENCHMARK(BM_FtVolatility)->Arg(5)->Arg(21)->Arg(252);

void BM_StdVolatility(benchmark::State& state) {
  const auto r = returns(4040);
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(std_volatility(r, horizon));
  state.SetItemsProcessed(state.iterations() * r.size());
}
BENCHMARK(BM_StdVolatility)->Arg(5)->Arg(21)->Arg(252);

void BM_DirectDiscrete(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = FuzzyPartition::over_samples(n, 21, Shape::ZShaped);
  std::vector<double> times;
  std::vector<double> values;
  for (std::size_t t = 0; t <= static_cast<std::size_t>(p.domain_end()); ++t) {
    times.push_back(static_cast<double>(t));
    values.push_back(std::sin(0.01 * static_cast<double>(t)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(direct_discrete(times, values, p));
  state.SetItemsProcessed(state.iterations() * times.size());
}
BENCHMARK(BM_DirectDiscrete)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Compare(benchmark::State& state) {
  const auto r = returns(4040);
  for (auto _ : state) benchmark::DoNotOptimize(compare(r, default_horizons()));
}
BENCHMARK(BM_Compare);

}  // namespace

BENCHMARK_MAIN();
