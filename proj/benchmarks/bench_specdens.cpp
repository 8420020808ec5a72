#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "specdens/chebyshev.hpp"
#include "specdens/jackson.hpp"
#include "specdens/kernels.hpp"
#include "specdens/sampler.hpp"
#include "specdens/spectral.hpp"
#include "specdens/truncation.hpp"

using namespace specdens;

namespace {

void BM_FejerPlan(benchmark::State& state) {
  const AccuracyTarget t{0.1, 1.0 / static_cast<double>(state.range(0)), 0.1, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(fejer_plan(t, std::uint64_t{1} << 40));
}
BENCHMARK(BM_FejerPlan)->RangeMultiplier(10)->Range(10, 10000);

void BM_TruncationOrder(benchmark::State& state) {
  const AccuracyTarget t{0.1, 0.2, 1.0 / static_cast<double>(state.range(0)), 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(truncation_order(t));
}
BENCHMARK(BM_TruncationOrder)->RangeMultiplier(10)->Range(10, 100000);

void BM_JacksonPlan(benchmark::State& state) {
  const AccuracyTarget t{0.1, 1.0 / static_cast<double>(state.range(0)), 0.1, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(jackson_plan(t));
}
BENCHMARK(BM_JacksonPlan)->RangeMultiplier(10)->Range(10, 1000);

void BM_ShiftedCoeffs(benchmark::State& state) {
  const auto order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shifted_coeffs(0.05, 0.3, order));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ShiftedCoeffs)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_QpeDistribution(benchmark::State& state) {
  const auto inst = random_model(64, 7);
  const SpectralModel model = diagonalize(inst.op, inst.psi);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qpe_distribution(model, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QpeDistribution)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_StatevectorQpe(benchmark::State& state) {
  const auto inst = random_model(8, 7);
  const auto ancilla = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(statevector_qpe(inst.op, inst.psi, ancilla));
}
BENCHMARK(BM_StatevectorQpe)->DenseRange(4, 10, 2);

}  // namespace

BENCHMARK_MAIN();
