#include <benchmark/benchmark.h>

#include "mogp/ksat.hpp"
#include "mogp/pspin.hpp"
#include "mogp/tuples.hpp"

using namespace mogp;

namespace {

DisorderTensor disorder(int n, int p) {
  RandomStream s(1, 1);
  return sample_disorder(n, p, s);
}

void BM_EnergyTableGray(benchmark::State& state) {
  const auto J = disorder(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(energy_table(J).values.data());
}
BENCHMARK(BM_EnergyTableGray)->Arg(10)->Arg(14)->Arg(18);

void BM_EnergyTableDirect(benchmark::State& state) {
  const auto J = disorder(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(energy_table_direct(J).values.data());
}
BENCHMARK(BM_EnergyTableDirect)->Arg(10)->Arg(14);

void BM_MaximinPairs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto J = disorder(n, 3);
  const auto table = energy_table(J);
  const auto patterns = anchored_patterns(OverlapConstraint::spin_overlap(n, 2, 0.5, 0.25));
  for (auto _ : state) benchmark::DoNotOptimize(maximin<double>(table.values, patterns).value);
}
BENCHMARK(BM_MaximinPairs)->Arg(10)->Arg(14)->Arg(16);

void BM_MaximinTriples(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto table = energy_table(disorder(n, 3));
  const auto patterns = anchored_patterns(OverlapConstraint::spin_overlap(n, 3, 0.5, 0.25));
  for (auto _ : state) benchmark::DoNotOptimize(maximin<double>(table.values, patterns).value);
}
BENCHMARK(BM_MaximinTriples)->Arg(8)->Arg(12);  // at n = 10 only odd distance 3 fits: empty

void BM_SatisfiedTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream s(2, 2);
  const auto phi = sample_formula(DensityParams::make(n, 4, 0.6), s);
  for (auto _ : state) benchmark::DoNotOptimize(satisfied_table(phi).data());
}
BENCHMARK(BM_SatisfiedTable)->Arg(12)->Arg(16);

void BM_FirstViolationTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream s(3, 3);
  const auto phi = sample_formula(DensityParams::make(n, 4, 0.6), s);
  for (auto _ : state) benchmark::DoNotOptimize(first_violation_table(phi).data());
}
BENCHMARK(BM_FirstViolationTable)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
