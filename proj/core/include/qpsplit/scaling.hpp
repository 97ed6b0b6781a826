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

#ifndef QPSPLIT_SCALING_HPP
#define QPSPLIT_SCALING_HPP

#include "qpsplit/problem.hpp"

namespace qpsplit {

/// Diagonal equilibration S = diag(D, E) and cost scale c, together with
/// the scaled problem
///   P_s = c D P D,  q_s = c D q,  A_s = E A D,  l_s = E l,  u_s = E u.
struct ScalingResult {
  Vector D;
  Vector E;
  Vector Dinv;
  Vector Einv;
  double c = 1.0;
  double cinv = 1.0;
  ProblemData scaled;
  Index iterations_used = 0;
  bool converged = false;
};

inline constexpr double kDefaultEquilibrationTol = 1e-3;
inline constexpr Index kDefaultScalingIterations = 10;

/// Modified Ruiz equilibration of [[P, A'], [A, 0]] followed by cost
/// normalization on every pass. max_iter = 0 yields the identity scaling.
ScalingResult ruiz_equilibrate(const ProblemData& problem,
                               double eps_equil = kDefaultEquilibrationTol,
                               Index max_iter = kDefaultScalingIterations);

/// Rebuilds the scaled problem from unscaled data and an existing scaling.
ProblemData apply_scaling(const ScalingResult& s, const ProblemData& problem);

/// Applies an existing scaling to fresh vectors.
Vector scale_q(const ScalingResult& s, std::span<const double> q);
Vector scale_bounds(const ScalingResult& s, std::span<const double> bounds);

struct UnscaledPoint {
  Vector x;
  Vector y;
  Vector z;
};

/// x = D x_s, y = E y_s / c, z = E^-1 z_s.
UnscaledPoint unscale_solution(std::span<const double> x_scaled,
                               std::span<const double> y_scaled,
                               std::span<const double> z_scaled,
                               const ScalingResult& s);

/// Unscaled residuals and the magnitudes entering the relative
/// tolerances, all computed from scaled iterates.
struct ResidualInfo {
  Vector r_prim;  // E^-1 (A_s x_s - z_s)
  Vector r_dual;  // c^-1 D^-1 (P_s x_s + q_s + A_s' y_s)
  double prim_norm = 0.0;
  double dual_norm = 0.0;
  // max{|E^-1 A_s x_s|, |E^-1 z_s|}
  double prim_scale = 0.0;
  // c^-1 max{|D^-1 P_s x_s|, |D^-1 A_s' y_s|, |D^-1 q_s|}
  double dual_scale = 0.0;
  // Same quantities measured in the scaled space (used to adapt rho).
  double prim_norm_scaled = 0.0;
  double dual_norm_scaled = 0.0;
  double prim_scale_scaled = 0.0;
  double dual_scale_scaled = 0.0;
};

ResidualInfo unscaled_residuals(const ScalingResult& s,
                                std::span<const double> x_scaled,
                                std::span<const double> z_scaled,
                                std::span<const double> y_scaled);

}  // namespace qpsplit

#endif  // QPSPLIT_SCALING_HPP
