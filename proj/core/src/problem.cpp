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

#include "qpsplit/problem.hpp"

#include <cmath>

namespace qpsplit {

void ProblemData::validate() const {
  P.validate();
  A.validate();
  if (P.nrows != P.ncols) throw DimensionError("P must be square");
  if (!P.is_upper_triangular()) {
    throw std::invalid_argument("P must be stored as its upper triangle");
  }
  if (A.ncols != n()) {
    throw DimensionError("A has " + std::to_string(A.ncols) +
                         " columns, expected n = " + std::to_string(n()));
  }
  if (static_cast<Index>(q.size()) != n()) {
    throw DimensionError("q length does not match n");
  }
  if (static_cast<Index>(l.size()) != m() ||
      static_cast<Index>(u.size()) != m()) {
    throw DimensionError("bound length does not match m");
  }
  for (double v : P.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("P has a non-finite value");
  }
  for (double v : A.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("A has a non-finite value");
  }
  for (double v : q) {
    if (!std::isfinite(v)) throw std::invalid_argument("q has a non-finite value");
  }
  for (Index i = 0; i < m(); ++i) {
    if (std::isnan(l[i]) || std::isnan(u[i])) {
      throw std::invalid_argument("bound " + std::to_string(i) + " is NaN");
    }
  }
}

std::optional<Index> ProblemData::first_inconsistent_row() const {
  for (Index i = 0; i < m(); ++i) {
    if (l[i] > u[i]) return i;
  }
  return std::nullopt;
}

ProblemData make_problem(const CscMatrix& P, Vector q, CscMatrix A, Vector l,
                         Vector u) {
  P.validate();
  if (P.nrows != P.ncols) throw DimensionError("P must be square");
  ProblemData problem;
  if (P.is_upper_triangular()) {
    problem.P = P;
  } else {
    for (Index j = 0; j < P.ncols; ++j) {
      for (Index p = P.colptr[j]; p < P.colptr[j + 1]; ++p) {
        const Index i = P.rowind[p];
        if (i > j && P.values[p] != P.coeff(j, i)) {
          throw std::invalid_argument(
              "P is neither upper triangular nor symmetric at (" +
              std::to_string(i) + ", " + std::to_string(j) + ")");
        }
      }
    }
    problem.P = upper_triangle(P);
  }
  problem.q = std::move(q);
  problem.A = std::move(A);
  problem.l = std::move(l);
  problem.u = std::move(u);
  for (double& v : problem.l) v = canonical_bound(v);
  for (double& v : problem.u) v = canonical_bound(v);
  problem.validate();
  return problem;
}

double objective_value(const ProblemData& problem, std::span<const double> x) {
  const Vector px = spmv(problem.P, x, SpmvMode::kSymmetricUpper);
  return 0.5 * dot(x, px) + dot(problem.q, x);
}

}  // namespace qpsplit
