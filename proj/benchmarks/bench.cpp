#include <random>

#include <benchmark/benchmark.h>

#include "k3/identities.hpp"

using namespace k3;

namespace {

// F_S cost grows like degree^4; the argument is the row sum in percent.
// At 90 percent with all four entries nonzero the default work cap is hit.
void BM_fs(benchmark::State& state) {
  const double r = state.range(0) / 100.0;
  const ZMatrix z = ZMatrix::real(0.6 * r, 0.4 * r, 0.3 * r, 0.7 * r);
  for (auto _ : state) benchmark::DoNotOptimize(fs(HGParams::half(), z));
}
BENCHMARK(BM_fs)->Arg(10)->Arg(30)->Arg(50)->Arg(70)->Unit(benchmark::kMicrosecond);

void BM_ft(benchmark::State& state) {
  const double r = state.range(0) / 100.0;
  const ZMatrix z = ZMatrix::real(0.6 * r, 0.4 * r, 0.3 * r, 0.7 * r);
  for (auto _ : state) benchmark::DoNotOptimize(ft(HGParams::half(), z));
}
BENCHMARK(BM_ft)->Arg(10)->Arg(50)->Arg(70)->Unit(benchmark::kMicrosecond);

void BM_theta_vector(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Tau t = random_domain_point(rng);
  for (auto _ : state) benchmark::DoNotOptimize(theta_vector(t));
}
BENCHMARK(BM_theta_vector)->Unit(benchmark::kMicrosecond);

void BM_thomae(benchmark::State& state) {
  const ZMatrix z = ZMatrix::real(0.625, 0.0625, 0.0625, 0.625);
  for (auto _ : state) benchmark::DoNotOptimize(verify_thomae(z));
}
BENCHMARK(BM_thomae)->Unit(benchmark::kMillisecond);

void BM_iterate(benchmark::State& state) {
  const auto kind = static_cast<MeanKind>(state.range(0));
  const MeanState c{{8, 4, 2, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(iterate_mean(kind, c));
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_iterate)->Arg(0)->Arg(1);

void BM_limit_formula(benchmark::State& state) {
  const auto kind = static_cast<MeanKind>(state.range(0));
  const MeanState c{{8, 4, 2, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(limit_formula(kind, c));
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_limit_formula)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
