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

#include "qpsplit/linsys.hpp"
#include "qpsplit/probgen.hpp"

namespace {

using namespace qpsplit;

KktMatrix kkt_for(Index n) {
  const ProblemData p = gen_random_qp(n, 1);
  return form_kkt(p.P, p.A, 1e-6, Vector(p.m(), 0.1));
}

void BM_SymbolicFactor(benchmark::State& state) {
  const KktMatrix kkt = kkt_for(state.range(0));
  const auto ordering = state.range(1) ? Ordering::kAmd : Ordering::kNatural;
  for (auto _ : state) benchmark::DoNotOptimize(symbolic_factor(kkt.K, ordering));
}
BENCHMARK(BM_SymbolicFactor)->ArgsProduct({{20, 50, 100}, {0, 1}});

void BM_NumericFactor(benchmark::State& state) {
  const KktMatrix kkt = kkt_for(state.range(0));
  const SymbolicFactor sym = symbolic_factor(kkt.K, Ordering::kAmd);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_factor(kkt.K, sym));
  state.counters["factor_nnz"] = static_cast<double>(sym.factor_nnz());
}
BENCHMARK(BM_NumericFactor)->Arg(20)->Arg(50)->Arg(100);

void BM_KktSolve(benchmark::State& state) {
  const KktMatrix kkt = kkt_for(state.range(0));
  const SymbolicFactor sym = symbolic_factor(kkt.K, Ordering::kAmd);
  const NumericFactor fac = numeric_factor(kkt.K, sym);
  const Vector rhs(static_cast<std::size_t>(sym.dim()), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kkt_solve(fac, sym, rhs));
}
BENCHMARK(BM_KktSolve)->Arg(20)->Arg(50)->Arg(100);

}  // namespace
