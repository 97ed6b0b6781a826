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

#include "qpsplit/solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <utility>

namespace qpsplit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::array<std::pair<Status, std::string_view>, 8> kStatusNames{{
    {Status::kUnsolved, "unsolved"},
    {Status::kSolved, "solved"},
    {Status::kSolvedInaccurate, "solved_inaccurate"},
    {Status::kPrimalInfeasible, "primal_infeasible"},
    {Status::kDualInfeasible, "dual_infeasible"},
    {Status::kMaxIterReached, "max_iter_reached"},
    {Status::kTimeLimitReached, "time_limit_reached"},
    {Status::kNumericalError, "numerical_error"},
}};

// Looser factor applied to the tolerances when max_iter is hit.
constexpr double kInaccurateFactor = 10.0;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(Status status) {
  for (const auto& [s, name] : kStatusNames) {
    if (s == status) return name;
  }
  return "unknown";
}

std::optional<Status> status_from_string(std::string_view name) {
  for (const auto& [s, n] : kStatusNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(PolishStatus status) {
  switch (status) {
    case PolishStatus::kNotRun:
      return "not_run";
    case PolishStatus::kAccepted:
      return "accepted";
    case PolishStatus::kRejected:
      return "rejected";
  }
  return "unknown";
}

void Settings::validate() const {
  require(rho > 0.0, "rho must be positive");
  require(sigma > 0.0, "sigma must be positive");
  require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2)");
  require(eps_abs > 0.0 && eps_rel > 0.0, "tolerances must be positive");
  require(eps_prim_inf > 0.0 && eps_dual_inf > 0.0,
          "infeasibility tolerances must be positive");
  require(max_iter > 0, "max_iter must be positive");
  require(time_limit >= 0.0, "time_limit must be nonnegative");
  require(check_termination > 0, "check_termination must be positive");
  require(scaling_iters >= 0, "scaling_iters must be nonnegative");
  require(scaling_eps > 0.0, "scaling_eps must be positive");
  require(adaptive_rho_fraction > 0.0, "adaptive_rho_fraction must be positive");
  require(adaptive_rho_tolerance > 1.0,
          "adaptive_rho_tolerance must be greater than 1");
  require(adaptive_rho_max_updates >= 0,
          "adaptive_rho_max_updates must be nonnegative");
  require(rho_min > 0.0 && rho_min <= rho_max, "invalid rho bounds");
  require(rho_eq_scale > 0.0, "rho_eq_scale must be positive");
  require(delta > 0.0, "delta must be positive");
  require(polish_refine_iter >= 0, "polish_refine_iter must be nonnegative");
  require(cg_tol > 0.0, "cg_tol must be positive");
  require(cg_max_iter > 0, "cg_max_iter must be positive");
}

Settings high_accuracy_settings() {
  Settings s;
  s.eps_abs = 1e-5;
  s.eps_rel = 1e-5;
  return s;
}

bool is_equality_row(double l, double u) {
  if (!std::isfinite(l) || !std::isfinite(u)) return false;
  return u - l <= 1e-12 * std::max({1.0, std::abs(l), std::abs(u)});
}

bool check_primal_infeasible(const ScalingResult& scaling,
                             std::span<const double> delta_y, double eps) {
  const ProblemData& sp = scaling.scaled;
  const Index m = sp.m();
  if (static_cast<Index>(delta_y.size()) != m) {
    throw DimensionError("delta_y length mismatch");
  }
  double norm = 0.0;
  for (Index i = 0; i < m; ++i) {
    norm = std::max(norm, std::abs(scaling.E[i] * delta_y[i]));
  }
  if (norm == 0.0) return false;

  // u' (dy)_+ + l' (dy)_-; an infinite bound against a nonzero part fails.
  double support = 0.0;
  for (Index i = 0; i < m; ++i) {
    if (delta_y[i] > 0.0) {
      if (std::isinf(sp.u[i])) return false;
      support += sp.u[i] * delta_y[i];
    } else if (delta_y[i] < 0.0) {
      if (std::isinf(sp.l[i])) return false;
      support += sp.l[i] * delta_y[i];
    }
  }
  if (support > -eps * norm) return false;

  const Vector aty = spmv(sp.A, delta_y, SpmvMode::kTranspose);
  for (Index j = 0; j < sp.n(); ++j) {
    if (std::abs(scaling.Dinv[j] * aty[j]) > eps * norm) return false;
  }
  return true;
}

bool check_dual_infeasible(const ScalingResult& scaling,
                           std::span<const double> delta_x, double eps) {
  const ProblemData& sp = scaling.scaled;
  const Index n = sp.n();
  if (static_cast<Index>(delta_x.size()) != n) {
    throw DimensionError("delta_x length mismatch");
  }
  double norm = 0.0;
  for (Index j = 0; j < n; ++j) {
    norm = std::max(norm, std::abs(scaling.D[j] * delta_x[j]));
  }
  if (norm == 0.0) return false;
  const double tol = eps * norm;

  if (dot(sp.q, delta_x) > -scaling.c * tol) return false;

  const Vector px = spmv(sp.P, delta_x, SpmvMode::kSymmetricUpper);
  for (Index j = 0; j < n; ++j) {
    if (std::abs(scaling.Dinv[j] * px[j]) > scaling.c * tol) return false;
  }

  const Vector ax = spmv(sp.A, delta_x);
  for (Index i = 0; i < sp.m(); ++i) {
    const double v = scaling.Einv[i] * ax[i];
    const bool lower_inf = std::isinf(sp.l[i]);
    const bool upper_inf = std::isinf(sp.u[i]);
    if (!lower_inf && !upper_inf) {
      if (std::abs(v) > tol) return false;
    } else if (upper_inf && !lower_inf) {
      if (v < -tol) return false;
    } else if (lower_inf && !upper_inf) {
      if (v > tol) return false;
    }
  }
  return true;
}

Solver::Solver(ProblemData problem, Settings settings)
    : problem_(std::move(problem)), settings_(settings) {
  setup();
}

Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;
Solver::~Solver() = default;

void Solver::setup() {
  const auto start = Clock::now();
  problem_.validate();
  for (double& v : problem_.l) v = canonical_bound(v);
  for (double& v : problem_.u) v = canonical_bound(v);
  settings_.validate();

  const Index n = problem_.n();
  const Index m = problem_.m();
  state_.scaling =
      ruiz_equilibrate(problem_, settings_.scaling_eps, settings_.scaling_iters);
  for (Vector* v : {&state_.x, &state_.x_tilde, &state_.x_prev, &state_.delta_x,
                    &rhs_x_}) {
    v->assign(n, 0.0);
  }
  for (Vector* v : {&state_.z, &state_.y, &state_.z_tilde, &state_.z_prev,
                    &state_.y_prev, &state_.delta_y, &rhs_z_}) {
    v->assign(m, 0.0);
  }
  state_.rho_bar = std::clamp(settings_.rho, settings_.rho_min, settings_.rho_max);
  build_rho_vector();

  LinsysOptions options;
  options.backend = settings_.linsys_backend;
  options.ordering = settings_.ordering;
  options.cg_tol = settings_.cg_tol;
  options.cg_max_iter = settings_.cg_max_iter;
  const auto factor_start = Clock::now();
  try {
    linsys_ = make_linear_system(state_.scaling.scaled.P, state_.scaling.scaled.A,
                                 settings_.sigma, state_.rho_vec, options);
  } catch (const ZeroPivot&) {
    factorization_failed_ = true;
  }
  mark_factorized(seconds_since(factor_start));
  pending_setup_seconds_ = seconds_since(start);
}

void Solver::build_rho_vector() {
  const Index m = problem_.m();
  state_.equality.resize(m);
  state_.rho_vec.resize(m);
  state_.rho_inv.resize(m);
  for (Index i = 0; i < m; ++i) {
    state_.equality[i] = is_equality_row(problem_.l[i], problem_.u[i]) ? 1 : 0;
    state_.rho_vec[i] = state_.equality[i]
                            ? settings_.rho_eq_scale * state_.rho_bar
                            : state_.rho_bar;
    state_.rho_inv[i] = 1.0 / state_.rho_vec[i];
  }
}

void Solver::mark_factorized(double seconds) {
  state_.last_factor_seconds = seconds;
  state_.work_since_factor = 0.0;
  state_.seconds_since_factor = 0.0;
}

void Solver::refresh_rho() {
  if (!linsys_) return;
  const auto start = Clock::now();
  try {
    linsys_->update_rho(state_.rho_vec);
  } catch (const ZeroPivot&) {
    factorization_failed_ = true;
    throw;
  }
  mark_factorized(seconds_since(start));
}

double Solver::sigma() const {
  return linsys_ ? linsys_->sigma() : settings_.sigma;
}

Index Solver::symbolic_factorizations() const {
  return linsys_ ? linsys_->symbolic_factorizations() : 0;
}

Index Solver::numeric_factorizations() const {
  return linsys_ ? linsys_->numeric_factorizations() : 0;
}

void Solver::iterate() {
  if (!linsys_ || factorization_failed_) {
    throw std::logic_error("no valid factorization to iterate with");
  }
  SolverState& st = state_;
  const ProblemData& sp = st.scaling.scaled;
  const Index n = sp.n();
  const Index m = sp.m();
  const double sigma = linsys_->sigma();
  const double alpha = settings_.alpha;

  std::swap(st.x_prev, st.x);
  std::swap(st.z_prev, st.z);
  std::swap(st.y_prev, st.y);

  for (Index j = 0; j < n; ++j) rhs_x_[j] = sigma * st.x_prev[j] - sp.q[j];
  for (Index i = 0; i < m; ++i) {
    rhs_z_[i] = st.z_prev[i] - st.rho_inv[i] * st.y_prev[i];
  }
  linsys_->solve(rhs_x_, rhs_z_, st.x_tilde, st.z_tilde);

  for (Index j = 0; j < n; ++j) {
    st.x[j] = alpha * st.x_tilde[j] + (1.0 - alpha) * st.x_prev[j];
    st.delta_x[j] = st.x[j] - st.x_prev[j];
  }
  for (Index i = 0; i < m; ++i) {
    const double relaxed = alpha * st.z_tilde[i] + (1.0 - alpha) * st.z_prev[i];
    const double v = relaxed + st.rho_inv[i] * st.y_prev[i];
    st.z[i] = std::clamp(v, sp.l[i], sp.u[i]);
    // Same as y + rho (relaxed - z); this form keeps y exactly zero
    // whenever the projection is inactive.
    st.y[i] = st.rho_vec[i] * (v - st.z[i]);
    st.delta_y[i] = st.y[i] - st.y_prev[i];
  }
  ++st.iteration;
  st.work_since_factor += linsys_->solve_work() + 12.0 * static_cast<double>(n + m);
  st.residuals_current = false;
}

std::optional<Status> Solver::check_termination() {
  SolverState& st = state_;
  st.residuals = unscaled_residuals(st.scaling, st.x, st.z, st.y);
  st.residuals_current = true;
  const ResidualInfo& r = st.residuals;
  const double eps_prim = settings_.eps_abs + settings_.eps_rel * r.prim_scale;
  const double eps_dual = settings_.eps_abs + settings_.eps_rel * r.dual_scale;
  if (r.prim_norm <= eps_prim && r.dual_norm <= eps_dual) return Status::kSolved;
  if (check_primal_infeasible(st.scaling, st.delta_y, settings_.eps_prim_inf)) {
    return Status::kPrimalInfeasible;
  }
  if (check_dual_infeasible(st.scaling, st.delta_x, settings_.eps_dual_inf)) {
    return Status::kDualInfeasible;
  }
  return std::nullopt;
}

bool Solver::adapt_rho() {
  SolverState& st = state_;
  if (!settings_.adaptive_rho || !linsys_) return false;
  if (st.rho_updates >= settings_.adaptive_rho_max_updates) return false;
  if (problem_.m() == 0) return false;

  bool gate_open = true;
  if (linsys_->backend() == LinsysBackend::kDirect) {
    gate_open = settings_.adaptive_rho_wall_clock
                    ? st.seconds_since_factor >
                          settings_.adaptive_rho_fraction * st.last_factor_seconds
                    : st.work_since_factor >
                          settings_.adaptive_rho_fraction * linsys_->factor_work();
  }
  if (!gate_open) return false;

  if (!st.residuals_current) {
    st.residuals = unscaled_residuals(st.scaling, st.x, st.z, st.y);
    st.residuals_current = true;
  }
  const ResidualInfo& r = st.residuals;
  if (r.prim_scale_scaled == 0.0 || r.dual_scale_scaled == 0.0) return false;
  const double prim_ratio = r.prim_norm_scaled / r.prim_scale_scaled;
  const double dual_ratio = r.dual_norm_scaled / r.dual_scale_scaled;
  if (prim_ratio == 0.0 && dual_ratio == 0.0) return false;
  double candidate = dual_ratio == 0.0
                         ? settings_.rho_max
                         : st.rho_bar * std::sqrt(prim_ratio / dual_ratio);
  candidate = std::clamp(candidate, settings_.rho_min, settings_.rho_max);
  const double factor = settings_.adaptive_rho_tolerance;
  if (!(candidate >= factor * st.rho_bar || candidate <= st.rho_bar / factor)) {
    return false;
  }
  set_rho(candidate);
  ++st.rho_updates;
  return true;
}

void Solver::set_rho(double rho_bar) {
  state_.rho_bar = std::clamp(rho_bar, settings_.rho_min, settings_.rho_max);
  build_rho_vector();
  refresh_rho();
}

void Solver::set_scaled_iterates(std::span<const double> x,
                                 std::span<const double> z,
                                 std::span<const double> y) {
  if (static_cast<Index>(x.size()) != problem_.n() ||
      static_cast<Index>(z.size()) != problem_.m() ||
      static_cast<Index>(y.size()) != problem_.m()) {
    throw DimensionError("iterate dimension mismatch");
  }
  state_.x.assign(x.begin(), x.end());
  state_.z.assign(z.begin(), z.end());
  state_.y.assign(y.begin(), y.end());
  std::fill(state_.delta_x.begin(), state_.delta_x.end(), 0.0);
  std::fill(state_.delta_y.begin(), state_.delta_y.end(), 0.0);
  state_.residuals_current = false;
}

void Solver::warm_start(std::span<const double> x, std::span<const double> y) {
  if (static_cast<Index>(y.size()) != problem_.m()) {
    throw DimensionError("warm start y has the wrong length");
  }
  warm_start_x(x);
  const ScalingResult& s = state_.scaling;
  for (Index i = 0; i < problem_.m(); ++i) state_.y[i] = s.c * s.Einv[i] * y[i];
}

void Solver::warm_start_x(std::span<const double> x) {
  if (static_cast<Index>(x.size()) != problem_.n()) {
    throw DimensionError("warm start x has the wrong length");
  }
  const ScalingResult& s = state_.scaling;
  for (Index j = 0; j < problem_.n(); ++j) state_.x[j] = s.Dinv[j] * x[j];
  state_.z = spmv(s.scaled.A, state_.x);
  std::fill(state_.delta_x.begin(), state_.delta_x.end(), 0.0);
  std::fill(state_.delta_y.begin(), state_.delta_y.end(), 0.0);
  state_.residuals_current = false;
}

void Solver::cold_start() {
  std::fill(state_.x.begin(), state_.x.end(), 0.0);
  std::fill(state_.z.begin(), state_.z.end(), 0.0);
  std::fill(state_.y.begin(), state_.y.end(), 0.0);
  std::fill(state_.delta_x.begin(), state_.delta_x.end(), 0.0);
  std::fill(state_.delta_y.begin(), state_.delta_y.end(), 0.0);
  state_.residuals_current = false;
  const double initial =
      std::clamp(settings_.rho, settings_.rho_min, settings_.rho_max);
  if (initial != state_.rho_bar && linsys_ && !factorization_failed_) {
    set_rho(initial);
  }
}

void Solver::update_vectors(std::optional<std::span<const double>> q,
                            std::optional<std::span<const double>> l,
                            std::optional<std::span<const double>> u) {
  const Index n = problem_.n();
  const Index m = problem_.m();
  if (q && static_cast<Index>(q->size()) != n) {
    throw DimensionError("q update has the wrong length");
  }
  if ((l && static_cast<Index>(l->size()) != m) ||
      (u && static_cast<Index>(u->size()) != m)) {
    throw DimensionError("bound update has the wrong length");
  }
  Vector new_l = l ? Vector(l->begin(), l->end()) : problem_.l;
  Vector new_u = u ? Vector(u->begin(), u->end()) : problem_.u;
  for (Index i = 0; i < m; ++i) {
    new_l[i] = canonical_bound(new_l[i]);
    new_u[i] = canonical_bound(new_u[i]);
    if (new_l[i] > new_u[i]) {
      throw std::invalid_argument("bound update has l > u at row " +
                                  std::to_string(i));
    }
  }
  if (q) {
    for (double v : *q) {
      if (!std::isfinite(v)) throw std::invalid_argument("q must be finite");
    }
    problem_.q.assign(q->begin(), q->end());
  }
  problem_.l = std::move(new_l);
  problem_.u = std::move(new_u);

  ScalingResult& s = state_.scaling;
  s.scaled.q = scale_q(s, problem_.q);
  s.scaled.l = scale_bounds(s, problem_.l);
  s.scaled.u = scale_bounds(s, problem_.u);

  const std::vector<char> previous = state_.equality;
  build_rho_vector();
  if (previous != state_.equality && linsys_ && !factorization_failed_) {
    try {
      refresh_rho();
    } catch (const ZeroPivot&) {
    }
  }
  state_.residuals_current = false;
  state_.status = Status::kUnsolved;
}

void Solver::update_matrices(std::optional<std::span<const double>> P_values,
                             std::optional<std::span<const double>> A_values) {
  if (P_values && static_cast<Index>(P_values->size()) != problem_.P.nnz()) {
    throw DimensionError("P update does not match the stored pattern");
  }
  if (A_values && static_cast<Index>(A_values->size()) != problem_.A.nnz()) {
    throw DimensionError("A update does not match the stored pattern");
  }
  const auto start = Clock::now();
  if (P_values) problem_.P.values.assign(P_values->begin(), P_values->end());
  if (A_values) problem_.A.values.assign(A_values->begin(), A_values->end());
  problem_.validate();

  SolverState& st = state_;
  if (settings_.freeze_scaling) {
    st.scaling.scaled = apply_scaling(st.scaling, problem_);
  } else {
    ScalingResult fresh = ruiz_equilibrate(problem_, settings_.scaling_eps,
                                           settings_.scaling_iters);
    const ScalingResult& old = st.scaling;
    for (Index j = 0; j < problem_.n(); ++j) {
      st.x[j] *= old.D[j] * fresh.Dinv[j];
    }
    for (Index i = 0; i < problem_.m(); ++i) {
      st.z[i] *= old.Einv[i] * fresh.E[i];
      st.y[i] *= old.cinv * old.E[i] * fresh.c * fresh.Einv[i];
    }
    st.scaling = std::move(fresh);
  }
  std::fill(st.delta_x.begin(), st.delta_x.end(), 0.0);
  std::fill(st.delta_y.begin(), st.delta_y.end(), 0.0);
  st.residuals_current = false;
  st.status = Status::kUnsolved;

  if (linsys_ && !factorization_failed_) {
    const auto factor_start = Clock::now();
    try {
      linsys_->update_matrices(st.scaling.scaled.P, st.scaling.scaled.A);
    } catch (const ZeroPivot&) {
      factorization_failed_ = true;
    }
    mark_factorized(seconds_since(factor_start));
  }
  pending_setup_seconds_ += seconds_since(start);
}

SolveResult Solver::solve() {
  const auto start = Clock::now();
  SolverState& st = state_;
  st.iteration = 0;
  st.rho_updates = 0;
  st.status = Status::kUnsolved;

  if (auto row = problem_.first_inconsistent_row()) {
    SolveResult result;
    result.status = st.status = Status::kPrimalInfeasible;
    result.primal_infeasibility_certificate.assign(problem_.m(), 0.0);
    result.primal_infeasibility_certificate[*row] = 1.0;
    result.rho_estimate = st.rho_bar;
    result.timings.setup = std::exchange(pending_setup_seconds_, 0.0);
    return result;
  }
  if (!linsys_ || factorization_failed_) {
    return finalize(Status::kNumericalError, 0.0);
  }

  Status status = Status::kUnsolved;
  const bool track_time =
      settings_.adaptive_rho_wall_clock || settings_.time_limit > 0.0;
  try {
    auto last = Clock::now();
    for (Index k = 1; k <= settings_.max_iter; ++k) {
      iterate();
      if (track_time) {
        const auto now = Clock::now();
        st.seconds_since_factor += std::chrono::duration<double>(now - last).count();
        last = now;
      }
      if (k % settings_.check_termination == 0 || k == settings_.max_iter) {
        if (auto done = check_termination()) {
          status = *done;
          break;
        }
        if (adapt_rho()) last = Clock::now();
      }
      if (settings_.time_limit > 0.0 &&
          seconds_since(start) > settings_.time_limit) {
        status = Status::kTimeLimitReached;
        break;
      }
    }
  } catch (const ZeroPivot&) {
    status = Status::kNumericalError;
  }

  if (status == Status::kUnsolved || status == Status::kTimeLimitReached) {
    if (!st.residuals_current) {
      st.residuals = unscaled_residuals(st.scaling, st.x, st.z, st.y);
      st.residuals_current = true;
    }
    const ResidualInfo& r = st.residuals;
    const double eps_prim = settings_.eps_abs + settings_.eps_rel * r.prim_scale;
    const double eps_dual = settings_.eps_abs + settings_.eps_rel * r.dual_scale;
    if (status == Status::kUnsolved) {
      status = (r.prim_norm <= kInaccurateFactor * eps_prim &&
                r.dual_norm <= kInaccurateFactor * eps_dual)
                   ? Status::kSolvedInaccurate
                   : Status::kMaxIterReached;
    }
  }
  return finalize(status, seconds_since(start));
}

SolveResult Solver::finalize(Status status, double solve_seconds) {
  SolverState& st = state_;
  st.status = status;
  SolveResult result;
  result.status = status;
  result.iterations = st.iteration;
  result.rho_updates = st.rho_updates;
  result.rho_estimate = st.rho_bar;
  result.timings.setup = std::exchange(pending_setup_seconds_, 0.0);
  result.timings.solve = solve_seconds;

  const ScalingResult& s = st.scaling;
  switch (status) {
    case Status::kPrimalInfeasible: {
      Vector& cert = result.primal_infeasibility_certificate;
      cert.resize(problem_.m());
      for (Index i = 0; i < problem_.m(); ++i) {
        cert[i] = s.cinv * s.E[i] * st.delta_y[i];
      }
      return result;
    }
    case Status::kDualInfeasible: {
      Vector& cert = result.dual_infeasibility_certificate;
      cert.resize(problem_.n());
      for (Index j = 0; j < problem_.n(); ++j) cert[j] = s.D[j] * st.delta_x[j];
      return result;
    }
    case Status::kNumericalError:
    case Status::kUnsolved:
      return result;
    default:
      break;
  }

  UnscaledPoint pt = unscale_solution(st.x, st.y, st.z, s);
  result.prim_res = st.residuals.prim_norm;
  result.dual_res = st.residuals.dual_norm;

  if (status == Status::kSolved && settings_.polish) {
    const auto polish_start = Clock::now();
    PolishOptions options;
    options.delta = settings_.delta;
    options.refine_steps = settings_.polish_refine_iter;
    options.eps_abs = settings_.eps_abs;
    options.eps_rel = settings_.eps_rel;
    options.ordering = settings_.ordering;
    PolishResult polished =
        polish(problem_, pt, result.prim_res, result.dual_res, options);
    if (polished.accepted) {
      pt = std::move(polished.point);
      result.prim_res = polished.residuals.prim;
      result.dual_res = polished.residuals.dual;
      result.polish = PolishStatus::kAccepted;
    } else {
      result.polish = PolishStatus::kRejected;
    }
    result.timings.polish = seconds_since(polish_start);
  }
  result.objective = objective_value(problem_, pt.x);
  result.x = std::move(pt.x);
  result.y = std::move(pt.y);
  result.z = std::move(pt.z);
  return result;
}

}  // namespace qpsplit
