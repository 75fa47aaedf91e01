#include <benchmark/benchmark.h>

#include "qbell/experiments.hpp"
#include "qbell/protocol.hpp"
#include "qbell/stabilizer_decoder.hpp"

namespace {

void BM_SyndromeTableBuild(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qbell::build_syndrome_table(k));
}
BENCHMARK(BM_SyndromeTableBuild)->Arg(1)->Arg(2);

void BM_ShortDistancePipeline(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = 2 * (2 * k + 1);
  const auto error = qbell::PauliString::bit_flips(n, 0b1011);
  for (auto _ : state)
    benchmark::DoNotOptimize(qbell::short_distance_pipeline(k, error));
}
BENCHMARK(BM_ShortDistancePipeline)->Arg(1)->Arg(2);

void BM_ExactEnumeration(benchmark::State& state) {
  qbell::ExperimentConfig config;
  config.scenario = qbell::ScenarioId::QrcBipartiteBell;
  config.k = static_cast<int>(state.range(0));
  config.p_values = {0.1};
  for (auto _ : state) benchmark::DoNotOptimize(qbell::enumerate_exact(config));
}
BENCHMARK(BM_ExactEnumeration)->Arg(1)->Arg(2);

void BM_ProtocolRun(benchmark::State& state) {
  const auto error = qbell::PauliString::from_text("XXIXII");
  for (auto _ : state) benchmark::DoNotOptimize(qbell::run_protocol(1, error, true));
}
BENCHMARK(BM_ProtocolRun);

void BM_MonteCarlo(benchmark::State& state) {
  qbell::ExperimentConfig config;
  config.scenario = qbell::ScenarioId::QrcBipartiteBell;
  config.k = 1;
  config.p_values = {0.1};
  config.method = qbell::Method::MonteCarlo;
  config.samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(qbell::monte_carlo(config));
}
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
