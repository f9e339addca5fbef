/*
 * Copyright 2026 The mgfield Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <vector>

#include <benchmark/benchmark.h>

#include "mgfield/exact_markov.hpp"
#include "mgfield/graph.hpp"
#include "mgfield/metrics.hpp"
#include "mgfield/spectral.hpp"

namespace {

using namespace mgfield;

void BM_FullCov(benchmark::State& state) {
  const MetricGraph g = canonical::figure_eight(1.0, 2.0);
  const FieldModel m = FieldModel::uniform(g, 1.0);
  const auto pts = mesh(g, 3.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(full_cov(g, m, pts));
  state.counters["points"] = static_cast<double>(pts.size());
}
BENCHMARK(BM_FullCov)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const MetricGraph g = canonical::star(std::vector<double>{1.0, 1.0, 1.0});
  const FieldModel m = FieldModel::uniform(g, 1.0);
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(g, m, h));
}
BENCHMARK(BM_Assemble)->Arg(25)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Resistance(benchmark::State& state) {
  const MetricGraph g = canonical::circle(1.0, static_cast<std::size_t>(state.range(0)));
  const auto pts = mesh(g, 1.0 / static_cast<double>(state.range(0)) / 4.0);
  for (auto _ : state) {
    const ResistanceStructure rs = resistance_structure(g);
    double sum = 0.0;
    for (const auto& p : pts) sum += resistance_distance(g, rs, pts.front(), p);
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_Resistance)->Arg(8)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
