#include <benchmark/benchmark.h>

#include "maxgcd/bounds.hpp"
#include "maxgcd/gcd_stats.hpp"
#include "maxgcd/models.hpp"
#include "maxgcd/primes.hpp"
#include "maxgcd/sampler.hpp"

namespace {

using namespace maxgcd;

void BM_SieveCount(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(prime_count(limit));
  }
}
BENCHMARK(BM_SieveCount)->Arg(1000000)->Arg(10000000);

void BM_UniformDraw(benchmark::State& state) {
  const auto range = SampleRange::make(Alpha::parse("1"), state.range(0));
  RngStream stream(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(uniform_natural(range.bound, stream));
  }
}
BENCHMARK(BM_UniformDraw)->Arg(100)->Arg(1000);

void BM_BinaryGcd(benchmark::State& state) {
  RngStream stream(2, 0);
  const Natural a = stream.next_bits(state.range(0)) + 1;
  const Natural b = stream.next_bits(state.range(0)) + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcd(a, b));
  }
}
BENCHMARK(BM_BinaryGcd)->Arg(145)->Arg(512)->Arg(4096);

void BM_PairExtremes(benchmark::State& state) {
  const auto range = SampleRange::make(Alpha::parse("1"), state.range(0));
  RngStream stream(3, 0);
  const auto batch = draw_batch(range, state.range(0), stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_extremes(batch));
  }
}
BENCHMARK(BM_PairExtremes)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CsProduct(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs_product(0.9, state.range(0)));
  }
}
BENCHMARK(BM_CsProduct)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_PhiSolve(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_solve(state.range(0), 1.0));
  }
}
BENCHMARK(BM_PhiSolve)->Arg(2000)->Arg(1000000);

void BM_UrnTrial(benchmark::State& state) {
  const auto sol = phi_solve(state.range(0), 1.0);
  const auto cfg = UrnConfig::make(state.range(0), window(sol.phi));
  RngStream stream(4, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(urn_trial(cfg, stream));
  }
}
BENCHMARK(BM_UrnTrial)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_GeometricRow(benchmark::State& state) {
  const PrimeTable table = primes_upto(state.range(0));
  RngStream stream(5, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_geometric_row(table, stream));
  }
}
BENCHMARK(BM_GeometricRow)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
