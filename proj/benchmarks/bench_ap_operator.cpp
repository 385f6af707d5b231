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

#include <vector>

#include <benchmark/benchmark.h>

#include "qmgraph/ap_operator.hpp"

namespace {

using qmg::APOperator;

void BM_SeStarSe(benchmark::State& state) {
  const auto s = APOperator::progression(6, 0, 3, -2);
  for (auto _ : state) benchmark::DoNotOptimize(s * qmg::adjoint(s) * s);
}
BENCHMARK(BM_SeStarSe);

void BM_MultiplyManyTerms(benchmark::State& state) {
  std::vector<qmg::APTerm> a, b;
  for (qmg::Index k = 0; k < state.range(0); ++k) {
    a.push_back(qmg::APTerm::progression(6 + k, -k, 3 + k % 4, 0));
    b.push_back(qmg::APTerm::progression(3 + k % 5, 0, 2 + k % 3, -1));
  }
  const APOperator x(a), y(b);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_MultiplyManyTerms)->RangeMultiplier(2)->Range(2, 32);

void BM_CheckCover(benchmark::State& state) {
  std::vector<qmg::APTerm> residues;
  const qmg::Index m = state.range(0);
  for (qmg::Index r = 0; r < m; ++r) residues.push_back(qmg::APTerm::progression(m, -r, m, -r));
  for (auto _ : state) benchmark::DoNotOptimize(qmg::check_cover(residues));
}
BENCHMARK(BM_CheckCover)->RangeMultiplier(4)->Range(4, 256);

void BM_ToDense(benchmark::State& state) {
  const auto s = APOperator::progression(48, -43, 8, -4);
  const qmg::TruncationWindow w(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qmg::to_dense(s, w));
}
BENCHMARK(BM_ToDense)->RangeMultiplier(4)->Range(4, 64);

}  // namespace
