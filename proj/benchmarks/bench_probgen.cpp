// Copyright 2026 The qpsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qpsplit/probgen.hpp"

namespace {

using namespace qpsplit;

void BM_Generate(benchmark::State& state) {
  const auto cls = all_problem_classes()[static_cast<std::size_t>(state.range(0))];
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate(GenSpec{cls, state.range(1), seed++, {}}));
  state.SetLabel(std::string(to_string(cls)));
}
BENCHMARK(BM_Generate)->ArgsProduct({benchmark::CreateDenseRange(0, 6, 1), {10}});

void BM_SolveDare(benchmark::State& state) {
  const LtiSystem sys = make_lti_system(state.range(0), 1, 10);
  for (auto _ : state) benchmark::DoNotOptimize(solve_dare(sys));
}
BENCHMARK(BM_SolveDare)->Arg(4)->Arg(10)->Arg(20);

}  // namespace
