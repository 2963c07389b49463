#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "adtrw/adtrw.hpp"

namespace adtrw {
namespace {

// Run with: build/benchmarks/adtrw_bench --benchmark_filter=<regex>

void BM_StateTable(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const auto d = make_density(spec::Sibuya{0.5}, t);
  for (auto _ : state) {
    auto table = state_table(d, t);
    benchmark::DoNotOptimize(table);
  }
  state.SetComplexityN(t);
}
BENCHMARK(BM_StateTable)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_SiteSeries(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const auto d = make_density(spec::Geometric{0.6}, t);
  std::vector<int> sites(11);
  std::iota(sites.begin(), sites.end(), -5);
  for (auto _ : state) {
    auto rows = site_probability_series(d, sites, t);
    benchmark::DoNotOptimize(rows);
  }
  state.SetComplexityN(t);
}
BENCHMARK(BM_SiteSeries)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

void BM_IncompleteBell(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto d = make_density(spec::Sibuya{0.5}, r);
  for (auto _ : state) {
    auto table = incomplete_bell(d, r);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_IncompleteBell)->Arg(32)->Arg(128)->Arg(512);

void BM_McSample(benchmark::State& state) {
  const auto d = make_density(spec::Sibuya{0.5}, 64);
  const auto up = JumpDensity::unit(Direction::Positive);
  const auto down = JumpDensity::unit(Direction::Negative);
  const McOptions options{{64}};
  for (auto _ : state) {
    auto ens = mc_sample(d, up, down, 64, state.range(0), 1, options);
    benchmark::DoNotOptimize(ens);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McSample)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FracPoissonStates(benchmark::State& state) {
  const MLParams clock{0.7, 1.0};
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto s = frac_poisson_until(clock, t, kClockTailTol);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_FracPoissonStates)->Arg(1)->Arg(8)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_MittagLeffler(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler(0.6, -x));
}
BENCHMARK(BM_MittagLeffler)->Arg(1)->Arg(8)->Arg(40);

void BM_SibuyaEstOrigin(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sibuya_est_origin({0.5}));
}
BENCHMARK(BM_SibuyaEstOrigin);

}  // namespace
}  // namespace adtrw

BENCHMARK_MAIN();
