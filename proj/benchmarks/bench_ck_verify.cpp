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

#include "qmgraph/ck_family.hpp"

namespace {

void BM_VerifyPi2(benchmark::State& state) {
  const auto f = qmg::family_pi2();
  for (auto _ : state) benchmark::DoNotOptimize(qmg::verify_ck(f, qmg::TruncationWindow(state.range(0))));
}
BENCHMARK(BM_VerifyPi2)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_VerifyPi3(benchmark::State& state) {
  const auto f = qmg::family_pi3();
  for (auto _ : state) benchmark::DoNotOptimize(qmg::verify_ck(f, qmg::TruncationWindow(state.range(0))));
}
BENCHMARK(BM_VerifyPi3)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
