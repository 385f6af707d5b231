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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "qmgraph/channel.hpp"

namespace {

qmg::KrausChannel pi2_channel(qmg::Index window) {
  return qmg::channel_from_path(qmg::family_pi2(), std::vector<std::string>{"e", "i", "g"},
                                qmg::TruncationWindow(window));
}

void BM_ApplyPathChannel(benchmark::State& state) {
  const auto ch = pi2_channel(state.range(0));
  std::mt19937_64 rng(1);
  const auto x = qmg::random_complex_matrix(ch.dim(), ch.dim(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(qmg::apply(ch, x));
  state.counters["dim"] = static_cast<double>(ch.dim());
}
BENCHMARK(BM_ApplyPathChannel)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_ChoiRoundTrip(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto ch = qmg::random_tp_channel(state.range(0), 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qmg::choi_to_kraus(qmg::choi(ch)));
}
BENCHMARK(BM_ChoiRoundTrip)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_VerifyStinespring(benchmark::State& state) {
  const auto ch = pi2_channel(state.range(0));
  const auto s = qmg::stinespring(ch);
  for (auto _ : state) benchmark::DoNotOptimize(qmg::verify_stinespring(ch, s));
}
BENCHMARK(BM_VerifyStinespring)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ConfusabilityBasis(benchmark::State& state) {
  const auto ch = pi2_channel(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qmg::confusability_basis(ch));
}
BENCHMARK(BM_ConfusabilityBasis)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

}  // namespace
