// Copyright 2026 The qmgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qmgraph/relation_graph.hpp"

namespace {

void BM_BuildGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qmg::build_graph(n));
}
BENCHMARK(BM_BuildGraph)->DenseRange(2, 6);

void BM_CountHamiltonianPaths(benchmark::State& state) {
  const auto g = qmg::build_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qmg::count_hamiltonian_paths(g));
}
BENCHMARK(BM_CountHamiltonianPaths)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_EnumerateHamiltonianPaths(benchmark::State& state) {
  const auto g = qmg::build_graph(3);
  for (auto _ : state) benchmark::DoNotOptimize(qmg::enumerate_hamiltonian_paths(g));
}
BENCHMARK(BM_EnumerateHamiltonianPaths)->Unit(benchmark::kMicrosecond);

}  // namespace
