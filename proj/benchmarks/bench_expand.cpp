#include <benchmark/benchmark.h>

#include "etalab/density.hpp"
#include "etalab/etaexpr.hpp"
#include "etalab/hooklen.hpp"

using namespace etalab;

static void BM_PartitionsMod2(benchmark::State& state) {
  const NormalForm nf = parse_normal_form("1/eta(1)");
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(nf, T, CoefficientRing::residue(2)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PartitionsMod2)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

static void BM_SixFactorsMod(benchmark::State& state) {
  const NormalForm nf = parse_normal_form("eta(1)^5*eta(2)^3*eta(3)^4/eta(4)^2/eta(6)^5/eta(12)^4");
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(nf, T, CoefficientRing::residue(1'000'000'007)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SixFactorsMod)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

static void BM_GExact(benchmark::State& state) {
  const NormalForm nf = parse_normal_form("eta(18)^3/eta(1)");
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(nf, T, CoefficientRing::exact()));
}
BENCHMARK(BM_GExact)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_GeneralizedMod3(benchmark::State& state) {
  const NormalForm nf = parse_normal_form("geta(9,0)/geta(6,1)");
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(nf, T, CoefficientRing::residue(3)));
}
BENCHMARK(BM_GeneralizedMod3)->Arg(45000)->Unit(benchmark::kMillisecond);

static void BM_DensityScan(benchmark::State& state) {
  const NormalForm nf = parse_normal_form("eta(18)^3/eta(1)");
  const std::vector<std::int64_t> xs{1000, 100000};
  for (auto _ : state) benchmark::DoNotOptimize(density_scan(nf, 3, xs));
}
BENCHMARK(BM_DensityScan)->Unit(benchmark::kMillisecond);

static void BM_HanLhs(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(han_lhs(2, 1, 3, T));
}
BENCHMARK(BM_HanLhs)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
