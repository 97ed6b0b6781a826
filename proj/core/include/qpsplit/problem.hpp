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

#ifndef QPSPLIT_PROBLEM_HPP
#define QPSPLIT_PROBLEM_HPP

#include <optional>
#include <string>

#include "qpsplit/sparse.hpp"

namespace qpsplit {

/// minimize 1/2 x'Px + q'x  subject to  l <= Ax <= u.
///
/// P holds the upper triangle only. Bounds beyond +-1e30 are stored as IEEE
/// infinities.
struct ProblemData {
  CscMatrix P;
  Vector q;
  CscMatrix A;
  Vector l;
  Vector u;

  Index n() const { return P.ncols; }
  Index m() const { return A.nrows; }

  /// Structural checks (dimensions, CSC invariants, upper-triangular P,
  /// finite data). Bound ordering is checked separately.
  void validate() const;

  /// Index of the first row with l > u, if any.
  std::optional<Index> first_inconsistent_row() const;

  friend bool operator==(const ProblemData&, const ProblemData&) = default;
};

/// Builds a problem from a P given either as upper triangle or as a full
/// symmetric matrix (folded after checking symmetry). Bounds are
/// canonicalized to +-infinity.
ProblemData make_problem(const CscMatrix& P, Vector q, CscMatrix A, Vector l,
                         Vector u);

double objective_value(const ProblemData& problem, std::span<const double> x);

}  // namespace qpsplit

#endif  // QPSPLIT_PROBLEM_HPP
