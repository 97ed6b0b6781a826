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

#ifndef QPSPLIT_POLISH_HPP
#define QPSPLIT_POLISH_HPP

#include <functional>
#include <vector>

#include "qpsplit/linsys.hpp"
#include "qpsplit/problem.hpp"
#include "qpsplit/scaling.hpp"

namespace qpsplit {

/// Lower-active (y_i < 0) and upper-active (y_i > 0) constraint rows.
struct ActiveSets {
  std::vector<Index> lower;
  std::vector<Index> upper;
};

ActiveSets guess_active_sets(std::span<const double> y);

/// Residual norms of (x, y, z) on the unscaled problem together with the
/// tolerance magnitudes max{|Ax|, |z|} and max{|Px|, |A'y|, |q|}.
struct KktResiduals {
  double prim = 0.0;
  double dual = 0.0;
  double prim_scale = 0.0;
  double dual_scale = 0.0;

  double eps_prim(double eps_abs, double eps_rel) const {
    return eps_abs + eps_rel * prim_scale;
  }
  double eps_dual(double eps_abs, double eps_rel) const {
    return eps_abs + eps_rel * dual_scale;
  }
};

KktResiduals kkt_residuals(const ProblemData& problem,
                           std::span<const double> x,
                           std::span<const double> y,
                           std::span<const double> z);

/// Largest |y_i (z_i - b_i)| over the sign-matching finite bound b_i.
double complementarity_violation(const ProblemData& problem,
                                 std::span<const double> y,
                                 std::span<const double> z);

using MatVec = std::function<void(std::span<const double>, std::span<double>)>;

/// t_0 = (K + dK)^-1 g, then `steps` passes of
/// t_{k+1} = t_k + (K + dK)^-1 (g - K t_k). `apply_k` evaluates K t.
Vector iterative_refine(const MatVec& apply_k, const NumericFactor& reg_factor,
                        const SymbolicFactor& reg_symbolic,
                        std::span<const double> g, Index steps);

struct PolishOptions {
  double delta = 1e-6;
  Index refine_steps = 3;
  double eps_abs = 1e-3;
  double eps_rel = 1e-3;
  Ordering ordering = Ordering::kAmd;
};

struct PolishResult {
  bool accepted = false;
  UnscaledPoint point;  // the polished point when accepted
  KktResiduals residuals;
  ActiveSets sets;
  double complementarity = 0.0;
};

/// Solves the delta-regularized reduced KKT system over the guessed active
/// set, refines it and accepts the result only if it passes the
/// optimality test without increasing either residual.
PolishResult polish(const ProblemData& problem, const UnscaledPoint& solution,
                    double prim_before, double dual_before,
                    const PolishOptions& options);

}  // namespace qpsplit

#endif  // QPSPLIT_POLISH_HPP
