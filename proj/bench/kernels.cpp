// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "fastgh/generalized.hpp"
#include "fastgh/hermite_asy.hpp"
#include "fastgh/recurrence.hpp"

using namespace fastgh;

namespace {

template <Exec E>
void BM_HermiteAsy(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(hermite_rule_asy(n, false, E));
}

template <Exec E>
void BM_HermiteRec(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(hermite_rule_rec(n, E));
}

template <Exec E>
void BM_FreudNewton(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const FreudPotential V = FreudPotential::monomial(4);
  const RecurrenceCoeffs c = stieltjes_coeffs(V, n + 1);
  for (auto _ : st) benchmark::DoNotOptimize(freud_rule(V, n, c, false, E));
}

}  // namespace

BENCHMARK(BM_HermiteAsy<Exec::serial>)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HermiteAsy<Exec::parallel>)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HermiteRec<Exec::serial>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HermiteRec<Exec::parallel>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FreudNewton<Exec::serial>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FreudNewton<Exec::parallel>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
