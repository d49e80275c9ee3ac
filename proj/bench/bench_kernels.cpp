// Copyright 2026 The relaycoal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial vs OpenMP kernels. Run with OMP_NUM_THREADS set to compare.

#include <benchmark/benchmark.h>

#include "relaycoal/kernels.hpp"

namespace relaycoal {
namespace {

Scenario bench_scenario(int providers, int tds) {
  ScenarioSpec spec;
  spec.providers = providers;
  spec.tds_per_sp.assign(static_cast<std::size_t>(providers), tds);
  spec.sources_per_sp.assign(static_cast<std::size_t>(providers), tds / 3);
  return generate_scenario(spec, 2026);
}

void BM_SubsetValues(benchmark::State& state, bool parallel) {
  const auto s = bench_scenario(static_cast<int>(state.range(0)), 12);
  SimulationSettings settings;
  settings.seed = 7;
  for (auto _ : state) {
    auto v = parallel ? subset_values_parallel(s, settings) : subset_values_serial(s, settings);
    benchmark::DoNotOptimize(v.data());
  }
}

void BM_UtilityMatrix(benchmark::State& state, bool parallel) {
  const auto s = bench_scenario(static_cast<int>(state.range(0)), 10);
  SimulationSettings settings;
  settings.seed = 7;
  const SimulatedEvaluator eval(s, settings);
  eval.prefill(true);
  const auto structures = enumerate_structures(s.sp_count());
  for (auto _ : state) {
    auto m = parallel ? utility_matrix_parallel(eval, structures)
                      : utility_matrix_serial(eval, structures);
    benchmark::DoNotOptimize(m.rows.data());
  }
}

void BM_AbsorbingFlags(benchmark::State& state, bool parallel) {
  const auto s = bench_scenario(static_cast<int>(state.range(0)), 10);
  SimulationSettings settings;
  settings.seed = 7;
  const SimulatedEvaluator eval(s, settings);
  eval.prefill(true);
  const auto structures = enumerate_structures(s.sp_count());
  for (auto _ : state) {
    auto f = parallel ? absorbing_flags_parallel(structures, eval)
                      : absorbing_flags_serial(structures, eval);
    benchmark::DoNotOptimize(f.data());
  }
}

BENCHMARK_CAPTURE(BM_SubsetValues, serial, false)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SubsetValues, parallel, true)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_UtilityMatrix, serial, false)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_UtilityMatrix, parallel, true)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AbsorbingFlags, serial, false)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AbsorbingFlags, parallel, true)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace relaycoal

BENCHMARK_MAIN();
