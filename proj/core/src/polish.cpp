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

#include "qpsplit/polish.hpp"

#include <algorithm>
#include <cmath>

namespace qpsplit {

ActiveSets guess_active_sets(std::span<const double> y) {
  ActiveSets sets;
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0.0) {
      sets.lower.push_back(static_cast<Index>(i));
    } else if (y[i] > 0.0) {
      sets.upper.push_back(static_cast<Index>(i));
    }
  }
  return sets;
}

KktResiduals kkt_residuals(const ProblemData& problem,
                           std::span<const double> x,
                           std::span<const double> y,
                           std::span<const double> z) {
  KktResiduals r;
  const Vector ax = spmv(problem.A, x);
  for (Index i = 0; i < problem.m(); ++i) {
    r.prim = std::max(r.prim, std::abs(ax[i] - z[i]));
    r.prim_scale = std::max({r.prim_scale, std::abs(ax[i]), std::abs(z[i])});
  }
  const Vector px = spmv(problem.P, x, SpmvMode::kSymmetricUpper);
  const Vector aty = spmv(problem.A, y, SpmvMode::kTranspose);
  for (Index j = 0; j < problem.n(); ++j) {
    r.dual = std::max(r.dual, std::abs(px[j] + problem.q[j] + aty[j]));
    r.dual_scale = std::max({r.dual_scale, std::abs(px[j]), std::abs(aty[j]),
                             std::abs(problem.q[j])});
  }
  return r;
}

double complementarity_violation(const ProblemData& problem,
                                 std::span<const double> y,
                                 std::span<const double> z) {
  double worst = 0.0;
  for (Index i = 0; i < problem.m(); ++i) {
    if (y[i] > 0.0 && std::isfinite(problem.u[i])) {
      worst = std::max(worst, std::abs(y[i] * (z[i] - problem.u[i])));
    } else if (y[i] < 0.0 && std::isfinite(problem.l[i])) {
      worst = std::max(worst, std::abs(y[i] * (z[i] - problem.l[i])));
    } else if (y[i] != 0.0) {
      // Nonzero multiplier against an infinite bound.
      worst = kInf;
    }
  }
  return worst;
}

Vector iterative_refine(const MatVec& apply_k, const NumericFactor& reg_factor,
                        const SymbolicFactor& reg_symbolic,
                        std::span<const double> g, Index steps) {
  if (steps < 0) throw std::invalid_argument("refinement steps must be >= 0");
  Vector t = kkt_solve(reg_factor, reg_symbolic, g);
  Vector kt(t.size());
  Vector work(t.size());
  Vector correction(t.size());
  for (Index k = 0; k < steps; ++k) {
    apply_k(t, kt);
    for (size_t i = 0; i < t.size(); ++i) correction[i] = g[i] - kt[i];
    kkt_solve_in_place(reg_factor, reg_symbolic, correction, work);
    for (size_t i = 0; i < t.size(); ++i) t[i] += correction[i];
  }
  return t;
}

PolishResult polish(const ProblemData& problem, const UnscaledPoint& solution,
                    double prim_before, double dual_before,
                    const PolishOptions& options) {
  const Index n = problem.n();
  const Index m = problem.m();
  PolishResult result;
  result.sets = guess_active_sets(solution.y);
  std::erase_if(result.sets.lower,
                [&](Index i) { return !std::isfinite(problem.l[i]); });
  std::erase_if(result.sets.upper,
                [&](Index i) { return !std::isfinite(problem.u[i]); });

  // Reduced constraint matrix: lower-active rows first, then upper-active.
  std::vector<Index> new_row(m, -1);
  std::vector<Index> rows;
  rows.insert(rows.end(), result.sets.lower.begin(), result.sets.lower.end());
  rows.insert(rows.end(), result.sets.upper.begin(), result.sets.upper.end());
  const Index m_red = static_cast<Index>(rows.size());
  for (Index k = 0; k < m_red; ++k) new_row[rows[k]] = k;
  CscMatrix a_red(m_red, n);
  for (Index j = 0; j < n; ++j) {
    std::vector<std::pair<Index, double>> col;
    for (Index p = problem.A.colptr[j]; p < problem.A.colptr[j + 1]; ++p) {
      const Index r = new_row[problem.A.rowind[p]];
      if (r >= 0) col.emplace_back(r, problem.A.values[p]);
    }
    std::sort(col.begin(), col.end());
    for (const auto& [r, v] : col) {
      a_red.rowind.push_back(r);
      a_red.values.push_back(v);
    }
    a_red.colptr[j + 1] = a_red.nnz();
  }

  const Vector inv_delta(m_red, 1.0 / options.delta);
  KktMatrix reg = form_kkt(problem.P, a_red, options.delta, inv_delta);
  SymbolicFactor sym = symbolic_factor(reg.K, options.ordering);
  NumericFactor fac;
  try {
    fac = numeric_factor(reg.K, sym);
  } catch (const ZeroPivot&) {
    return result;
  }

  Vector g(n + m_red);
  for (Index j = 0; j < n; ++j) g[j] = -problem.q[j];
  for (Index k = 0; k < m_red; ++k) {
    const Index i = rows[k];
    g[n + k] = k < static_cast<Index>(result.sets.lower.size()) ? problem.l[i]
                                                                : problem.u[i];
  }

  // Unregularized reduced KKT operator [[P, A_r'], [A_r, 0]].
  const MatVec apply_k = [&](std::span<const double> t, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const auto tx = t.subspan(0, n);
    const auto ty = t.subspan(n, m_red);
    auto ox = out.subspan(0, n);
    auto oy = out.subspan(n, m_red);
    spmv_add(problem.P, tx, ox, SpmvMode::kSymmetricUpper);
    spmv_add(a_red, ty, ox, SpmvMode::kTranspose);
    spmv_add(a_red, tx, oy);
  };
  const Vector t = iterative_refine(apply_k, fac, sym, g, options.refine_steps);

  UnscaledPoint& pt = result.point;
  pt.x.assign(t.begin(), t.begin() + n);
  pt.y.assign(m, 0.0);
  for (Index k = 0; k < m_red; ++k) pt.y[rows[k]] = t[n + k];
  pt.z = spmv(problem.A, pt.x);
  for (Index i = 0; i < m; ++i) {
    pt.z[i] = std::clamp(pt.z[i], problem.l[i], problem.u[i]);
  }
  for (double v : t) {
    if (!std::isfinite(v)) return result;
  }

  result.residuals = kkt_residuals(problem, pt.x, pt.y, pt.z);
  result.complementarity = complementarity_violation(problem, pt.y, pt.z);
  const KktResiduals& r = result.residuals;
  result.accepted =
      r.prim <= r.eps_prim(options.eps_abs, options.eps_rel) &&
      r.dual <= r.eps_dual(options.eps_abs, options.eps_rel) &&
      r.prim <= prim_before && r.dual <= dual_before &&
      result.complementarity <= 1e-9 * std::max(1.0, inf_norm(pt.y));
  return result;
}

}  // namespace qpsplit
