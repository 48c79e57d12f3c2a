#include <benchmark/benchmark.h>

#include "ossbench/engine.hpp"
#include "ossbench/stats.hpp"
#include "timeline.hpp"

using namespace ossbench;

namespace {

std::pair<RepositorySnapshot, Period> desk_scale_timeline() {
  harness::TimelineSpec spec;
  spec.seed = 424242;
  spec.release_count = {50, 50};
  spec.issue_count = {500, 500};
  return harness::generate(spec);
}

void BM_ComputeAll(benchmark::State& state) {
  const auto [snapshot, period] = desk_scale_timeline();
  const EngineConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(compute_all(snapshot, period, config));
}
BENCHMARK(BM_ComputeAll);

void BM_AttributeChanges(benchmark::State& state) {
  const auto [snapshot, period] = desk_scale_timeline();
  const EngineConfig config;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        attribute_changes(snapshot, period, config, Anchor::LastCommit, false));
}
BENCHMARK(BM_AttributeChanges);

void BM_WindowReleases(benchmark::State& state) {
  const auto [snapshot, period] = desk_scale_timeline();
  const EngineConfig config;
  for (auto _ : state)
    benchmark::DoNotOptimize(window_releases(snapshot, period, config));
}
BENCHMARK(BM_WindowReleases);

void BM_PopulationStats(benchmark::State& state) {
  std::vector<double> samples;
  samples.reserve(10000);
  for (int i = 0; i < 10000; ++i) samples.push_back(static_cast<double>((i * 2654435761u) % 997));
  for (auto _ : state) benchmark::DoNotOptimize(population_stats(samples));
}
BENCHMARK(BM_PopulationStats);

}  // namespace

BENCHMARK_MAIN();
