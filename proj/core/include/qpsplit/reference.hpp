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

#ifndef QPSPLIT_REFERENCE_HPP
#define QPSPLIT_REFERENCE_HPP

#include "qpsplit/problem.hpp"
#include "qpsplit/solver.hpp"

namespace qpsplit {

inline constexpr Index kReferenceMaxVariables = 12;
inline constexpr Index kReferenceMaxConstraints = 24;

struct ReferenceResult {
  Status status = Status::kUnsolved;
  Vector x;
  Vector y;
  Vector z;
  double objective = 0.0;
  Index candidates = 0;  // KKT systems solved
};

/// Brute-force dense solver for tiny problems.
///
/// Enumerates working sets (equalities always active, every other row
/// inactive or at one of its finite bounds) in order of increasing size and
/// returns the first point satisfying the KKT conditions to `tol`. For a
/// convex problem any such point is optimal. When none exists, the same
/// search on min 1/2|x|^2 over the constraints decides between primal and
/// dual infeasibility. Throws DimensionError above 12 variables or 24 rows.
ReferenceResult dense_reference_solve(const ProblemData& problem, double tol = 1e-9);

}  // namespace qpsplit

#endif  // QPSPLIT_REFERENCE_HPP
