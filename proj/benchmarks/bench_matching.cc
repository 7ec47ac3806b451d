// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "islsim/harness.hpp"

namespace {

using namespace islsim;

ConstellationConfig scenario(BeamMode mode, int ports) {
  ConstellationConfig cfg;  // evaluation defaults: 7 planes x 20 satellites
  cfg.mode = mode;
  cfg.ports = ports;
  return cfg;
}

void BM_Propagate(benchmark::State& state) {
  const ConstellationConfig cfg = scenario(BeamMode::Butler, 8);
  const Constellation c = build_constellation(cfg, 1);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(c, t));
    t += 30.0;
  }
}
BENCHMARK(BM_Propagate);

void BM_SnapshotGains(benchmark::State& state) {
  const ConstellationConfig cfg = scenario(BeamMode::Butler, static_cast<int>(state.range(0)));
  const Constellation c = build_constellation(cfg, 1);
  const auto states = propagate(c, 0.0);
  for (auto _ : state) {
    SnapshotGains snap(states, cfg);
    benchmark::DoNotOptimize(snap.count());
  }
}
BENCHMARK(BM_SnapshotGains)->Arg(2)->Arg(8);

void BM_EnumerateEdges(benchmark::State& state) {
  const ConstellationConfig cfg = scenario(BeamMode::Butler, 8);
  const Constellation c = build_constellation(cfg, 1);
  const SnapshotGains s0(propagate(c, 0.0), cfg);
  const SnapshotGains s1(propagate(c, 30.0), cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_feasible_edges(s0, s1, cfg));
  }
}
BENCHMARK(BM_EnumerateEdges);

void BM_Instance(benchmark::State& state) {
  const BeamMode mode = state.range(0) == 0 ? BeamMode::Butler : BeamMode::Steering;
  const ConstellationConfig cfg = scenario(mode, static_cast<int>(state.range(1)));
  const Constellation c = build_constellation(cfg, 1);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_instance(c, cfg, t));
    t += 30.0;
  }
}
BENCHMARK(BM_Instance)->Args({0, 2})->Args({0, 8})->Args({1, 2})->Args({1, 8});

void BM_FullTableInstance(benchmark::State& state) {
  ConstellationConfig cfg = scenario(BeamMode::Butler, 2);
  cfg.planes = 4;
  cfg.satellites = 40;
  const Constellation c = build_constellation(cfg, 1);
  const SnapshotGains s0(propagate(c, 0.0), cfg);
  const SnapshotGains s1(propagate(c, 30.0), cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_matching(s0, s1, cfg, InterferenceUpdate::FullTable));
  }
}
BENCHMARK(BM_FullTableInstance);

}  // namespace

BENCHMARK_MAIN();
