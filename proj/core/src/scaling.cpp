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

#include "qpsplit/scaling.hpp"

#include <algorithm>
#include <cmath>

namespace qpsplit {

namespace {

double scale_bound(double v, double e) {
  if (std::isinf(v)) return v;
  return e * v;
}

double unscale_bound(double v, double einv) {
  if (std::isinf(v)) return v;
  return einv * v;
}

// Column infinity norms of the symmetric matrix [[P, A'], [A, 0]].
void equilibration_norms(const ProblemData& p, Vector& col_norms_x,
                         Vector& col_norms_z) {
  col_norms_x = inf_norm_columns(p.P, /*symmetric_upper=*/true);
  const Vector a_cols = inf_norm_columns(p.A);
  for (Index j = 0; j < p.n(); ++j) {
    col_norms_x[j] = std::max(col_norms_x[j], a_cols[j]);
  }
  col_norms_z = inf_norm_rows(p.A);
}

double to_delta(double norm) { return norm == 0.0 ? 1.0 : 1.0 / std::sqrt(norm); }

}  // namespace

ScalingResult ruiz_equilibrate(const ProblemData& problem, double eps_equil,
                               Index max_iter) {
  if (!(eps_equil > 0.0)) {
    throw std::invalid_argument("equilibration tolerance must be positive");
  }
  const Index n = problem.n();
  const Index m = problem.m();
  ScalingResult s;
  s.D.assign(n, 1.0);
  s.E.assign(m, 1.0);
  s.scaled = problem;
  ProblemData& sp = s.scaled;

  Vector delta_x, delta_z;
  while (s.iterations_used < max_iter) {
    equilibration_norms(sp, delta_x, delta_z);
    double worst = 0.0;
    for (double& d : delta_x) {
      d = to_delta(d);
      worst = std::max(worst, std::abs(1.0 - d));
    }
    for (double& d : delta_z) {
      d = to_delta(d);
      worst = std::max(worst, std::abs(1.0 - d));
    }

    scale_rows_cols(sp.P, delta_x, delta_x);
    for (Index j = 0; j < n; ++j) sp.q[j] *= delta_x[j];
    scale_rows_cols(sp.A, delta_z, delta_x);
    for (Index i = 0; i < m; ++i) {
      sp.l[i] = scale_bound(sp.l[i], delta_z[i]);
      sp.u[i] = scale_bound(sp.u[i], delta_z[i]);
    }

    // Cost normalization.
    double mean_p = 0.0;
    if (n > 0) {
      const Vector p_cols = inf_norm_columns(sp.P, /*symmetric_upper=*/true);
      for (double v : p_cols) mean_p += v;
      mean_p /= static_cast<double>(n);
    }
    const double cost_norm = std::max(mean_p, inf_norm(sp.q));
    const double gamma = cost_norm == 0.0 ? 1.0 : 1.0 / cost_norm;
    for (double& v : sp.P.values) v *= gamma;
    for (double& v : sp.q) v *= gamma;

    for (Index j = 0; j < n; ++j) s.D[j] *= delta_x[j];
    for (Index i = 0; i < m; ++i) s.E[i] *= delta_z[i];
    s.c *= gamma;
    ++s.iterations_used;

    if (worst <= eps_equil) {
      s.converged = true;
      break;
    }
  }

  s.Dinv.resize(n);
  s.Einv.resize(m);
  for (Index j = 0; j < n; ++j) s.Dinv[j] = 1.0 / s.D[j];
  for (Index i = 0; i < m; ++i) s.Einv[i] = 1.0 / s.E[i];
  s.cinv = 1.0 / s.c;
  return s;
}

ProblemData apply_scaling(const ScalingResult& s, const ProblemData& problem) {
  ProblemData out = problem;
  scale_rows_cols(out.P, s.D, s.D);
  for (double& v : out.P.values) v *= s.c;
  scale_rows_cols(out.A, s.E, s.D);
  out.q = scale_q(s, problem.q);
  out.l = scale_bounds(s, problem.l);
  out.u = scale_bounds(s, problem.u);
  return out;
}

Vector scale_q(const ScalingResult& s, std::span<const double> q) {
  Vector out(q.size());
  for (size_t j = 0; j < q.size(); ++j) out[j] = s.c * s.D[j] * q[j];
  return out;
}

Vector scale_bounds(const ScalingResult& s, std::span<const double> bounds) {
  Vector out(bounds.size());
  for (size_t i = 0; i < bounds.size(); ++i) {
    out[i] = scale_bound(canonical_bound(bounds[i]), s.E[i]);
  }
  return out;
}

UnscaledPoint unscale_solution(std::span<const double> x_scaled,
                               std::span<const double> y_scaled,
                               std::span<const double> z_scaled,
                               const ScalingResult& s) {
  if (x_scaled.size() != s.D.size() || y_scaled.size() != s.E.size() ||
      z_scaled.size() != s.E.size()) {
    throw DimensionError("unscale_solution dimension mismatch");
  }
  UnscaledPoint pt;
  pt.x.resize(x_scaled.size());
  pt.y.resize(y_scaled.size());
  pt.z.resize(z_scaled.size());
  for (size_t j = 0; j < x_scaled.size(); ++j) pt.x[j] = s.D[j] * x_scaled[j];
  for (size_t i = 0; i < y_scaled.size(); ++i) {
    pt.y[i] = s.cinv * s.E[i] * y_scaled[i];
    pt.z[i] = unscale_bound(z_scaled[i], s.Einv[i]);
  }
  return pt;
}

ResidualInfo unscaled_residuals(const ScalingResult& s,
                                std::span<const double> x_scaled,
                                std::span<const double> z_scaled,
                                std::span<const double> y_scaled) {
  const ProblemData& sp = s.scaled;
  const Index n = sp.n();
  const Index m = sp.m();
  ResidualInfo info;

  const Vector ax = spmv(sp.A, x_scaled);
  info.r_prim.resize(m);
  double ax_norm = 0.0, z_norm = 0.0;
  double ax_norm_s = 0.0, z_norm_s = 0.0;
  for (Index i = 0; i < m; ++i) {
    const double r = ax[i] - z_scaled[i];
    info.prim_norm_scaled = std::max(info.prim_norm_scaled, std::abs(r));
    info.r_prim[i] = s.Einv[i] * r;
    info.prim_norm = std::max(info.prim_norm, std::abs(info.r_prim[i]));
    ax_norm = std::max(ax_norm, std::abs(s.Einv[i] * ax[i]));
    z_norm = std::max(z_norm, std::abs(s.Einv[i] * z_scaled[i]));
    ax_norm_s = std::max(ax_norm_s, std::abs(ax[i]));
    z_norm_s = std::max(z_norm_s, std::abs(z_scaled[i]));
  }
  info.prim_scale = std::max(ax_norm, z_norm);
  info.prim_scale_scaled = std::max(ax_norm_s, z_norm_s);

  const Vector px = spmv(sp.P, x_scaled, SpmvMode::kSymmetricUpper);
  const Vector aty = spmv(sp.A, y_scaled, SpmvMode::kTranspose);
  info.r_dual.resize(n);
  double px_norm = 0.0, aty_norm = 0.0, q_norm = 0.0;
  double px_norm_s = 0.0, aty_norm_s = 0.0, q_norm_s = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double r = px[j] + sp.q[j] + aty[j];
    info.dual_norm_scaled = std::max(info.dual_norm_scaled, std::abs(r));
    info.r_dual[j] = s.cinv * s.Dinv[j] * r;
    info.dual_norm = std::max(info.dual_norm, std::abs(info.r_dual[j]));
    px_norm = std::max(px_norm, std::abs(s.Dinv[j] * px[j]));
    aty_norm = std::max(aty_norm, std::abs(s.Dinv[j] * aty[j]));
    q_norm = std::max(q_norm, std::abs(s.Dinv[j] * sp.q[j]));
    px_norm_s = std::max(px_norm_s, std::abs(px[j]));
    aty_norm_s = std::max(aty_norm_s, std::abs(aty[j]));
    q_norm_s = std::max(q_norm_s, std::abs(sp.q[j]));
  }
  info.dual_scale = s.cinv * std::max({px_norm, aty_norm, q_norm});
  info.dual_scale_scaled = std::max({px_norm_s, aty_norm_s, q_norm_s});
  return info;
}

}  // namespace qpsplit
