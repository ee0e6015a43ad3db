#include <benchmark/benchmark.h>

#include "dtrine/channel.hpp"
#include "dtrine/keygen.hpp"
#include "dtrine/qmath.hpp"
#include "dtrine/security.hpp"

#include <random>

using namespace dtrine;

namespace {

void BM_EigHermitian16(benchmark::State& state) {
  const AncillaFamily family = v_matrix_one_param(0.15, 0.2);
  const auto states = conditioned_states(family, KeyCase::bit, Side::alice);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_hermitian(states[0].rho));
  }
}
BENCHMARK(BM_EigHermitian16);

void BM_ConditionedStates(benchmark::State& state) {
  const AncillaFamily family = v_matrix_one_param(0.15, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditioned_states(family, KeyCase::bit, Side::alice));
  }
}
BENCHMARK(BM_ConditionedStates);

void BM_EveHolevoBit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(eve_holevo(0.15, 0.2, KeyCase::bit, Side::alice));
  }
}
BENCHMARK(BM_EveHolevoBit);

void BM_EveHolevoTrit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(eve_holevo(0.15, 0.2, KeyCase::trit, Side::bob));
  }
}
BENCHMARK(BM_EveHolevoTrit);

void BM_OptimizeC(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_c(0.2, KeyCase::bit, Side::alice));
  }
}
BENCHMARK(BM_OptimizeC)->Unit(benchmark::kMillisecond);

void BM_SampleRecord(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_record(0.1, n, seed++));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(n));
}
BENCHMARK(BM_SampleRecord)->Arg(1 << 16);

void BM_GenerateKeys(benchmark::State& state) {
  const TransmissionRecord record = sample_record(0.1, 1 << 16, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_keys(record));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * (1 << 16));
}
BENCHMARK(BM_GenerateKeys);

}  // namespace

BENCHMARK_MAIN();
