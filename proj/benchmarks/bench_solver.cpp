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

#include <cmath>

#include "qpsplit/probgen.hpp"
#include "qpsplit/solver.hpp"

namespace {

using namespace qpsplit;

void solve_class(benchmark::State& state, ProblemClass cls) {
  const ProblemData p = generate(GenSpec{cls, state.range(0), 1, {}});
  Index iterations = 0;
  for (auto _ : state) {
    Solver solver(p);
    const SolveResult r = solver.solve();
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.x.data());
  }
  state.counters["iterations"] = static_cast<double>(iterations);
}

void BM_SolveRandomQp(benchmark::State& s) { solve_class(s, ProblemClass::kRandomQp); }
void BM_SolveEqQp(benchmark::State& s) { solve_class(s, ProblemClass::kEqQp); }
void BM_SolveOptimalControl(benchmark::State& s) { solve_class(s, ProblemClass::kOptimalControl); }
void BM_SolvePortfolio(benchmark::State& s) { solve_class(s, ProblemClass::kPortfolio); }
void BM_SolveLasso(benchmark::State& s) { solve_class(s, ProblemClass::kLasso); }
void BM_SolveHuber(benchmark::State& s) { solve_class(s, ProblemClass::kHuber); }
void BM_SolveSvm(benchmark::State& s) { solve_class(s, ProblemClass::kSvm); }

BENCHMARK(BM_SolveRandomQp)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveEqQp)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveOptimalControl)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolvePortfolio)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveLasso)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveHuber)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveSvm)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_WarmStartedLassoPath(benchmark::State& state) {
  const LassoData data = make_lasso_data(state.range(0), 1);
  Solver solver(lasso_qp(data, data.lambda_max / 5));
  Index k = 0;
  for (auto _ : state) {
    const double lambda = data.lambda_max * std::pow(10.0, -2.0 * (k++ % 50) / 50.0);
    const Vector q = lasso_cost(data, lambda);
    solver.update_vectors(std::span<const double>(q), std::nullopt, std::nullopt);
    benchmark::DoNotOptimize(solver.solve().x.data());
  }
}
BENCHMARK(BM_WarmStartedLassoPath)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
