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

#ifndef QPSPLIT_SOLVER_HPP
#define QPSPLIT_SOLVER_HPP

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "qpsplit/linsys.hpp"
#include "qpsplit/polish.hpp"
#include "qpsplit/problem.hpp"
#include "qpsplit/scaling.hpp"
#include "qpsplit/settings.hpp"

namespace qpsplit {

enum class Status {
  kUnsolved,
  kSolved,
  kSolvedInaccurate,
  kPrimalInfeasible,
  kDualInfeasible,
  kMaxIterReached,
  kTimeLimitReached,
  kNumericalError,
};

std::string_view to_string(Status status);
std::optional<Status> status_from_string(std::string_view name);

enum class PolishStatus { kNotRun, kAccepted, kRejected };

std::string_view to_string(PolishStatus status);

struct SolveTimings {
  double setup = 0.0;  // scaling + factorization (first solve only)
  double solve = 0.0;  // ADMM iterations
  double polish = 0.0;
  double total() const { return setup + solve + polish; }
};

struct SolveResult {
  Status status = Status::kUnsolved;
  // Unscaled primal-dual point; empty when the status is an infeasibility.
  Vector x;
  Vector y;
  Vector z;
  // Unscaled certificates; at most one is nonempty.
  Vector primal_infeasibility_certificate;
  Vector dual_infeasibility_certificate;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double prim_res = std::numeric_limits<double>::quiet_NaN();
  double dual_res = std::numeric_limits<double>::quiet_NaN();
  Index iterations = 0;
  Index rho_updates = 0;
  double rho_estimate = 0.0;
  PolishStatus polish = PolishStatus::kNotRun;
  SolveTimings timings;

  bool polish_succeeded() const { return polish == PolishStatus::kAccepted; }
};

/// Scaled iterates and cached data of one solver instance.
struct SolverState {
  ScalingResult scaling;
  Vector x, z, y;
  Vector x_tilde, z_tilde;
  Vector x_prev, z_prev, y_prev;
  Vector delta_x, delta_y;

  Vector rho_vec;
  Vector rho_inv;
  std::vector<char> equality;
  double rho_bar = 0.1;

  Index iteration = 0;    // within the current solve
  Index rho_updates = 0;  // within the current solve
  Status status = Status::kUnsolved;

  // Gate for rho adaptation: work (or seconds) spent iterating since the
  // last factorization versus the cost of that factorization.
  double work_since_factor = 0.0;
  double seconds_since_factor = 0.0;
  double last_factor_seconds = 0.0;

  ResidualInfo residuals;
  bool residuals_current = false;
};

/// Primal infeasibility test on scaled data for a scaled dual increment.
bool check_primal_infeasible(const ScalingResult& scaling,
                             std::span<const double> delta_y, double eps);
/// Dual infeasibility test on scaled data for a scaled primal increment.
bool check_dual_infeasible(const ScalingResult& scaling,
                           std::span<const double> delta_x, double eps);

/// True when l_i and u_i agree to 1e-12 relative.
bool is_equality_row(double l, double u);

/// ADMM solver for convex QPs with box constraints on Ax.
///
/// The constructor runs setup: equilibration, rho vector, KKT assembly and
/// factorization. solve() continues from the current iterates, so repeated
/// calls after update_vectors()/update_matrices() are warm-started.
class Solver {
 public:
  explicit Solver(ProblemData problem, Settings settings = {});
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;
  ~Solver();

  SolveResult solve();

  /// Sets (x, z, y) <- (x, Ax, y) from unscaled guesses.
  void warm_start(std::span<const double> x, std::span<const double> y);
  void warm_start_x(std::span<const double> x);
  /// Zeroes the iterates and resets rho to its initial value.
  void cold_start();

  void update_vectors(std::optional<std::span<const double>> q,
                      std::optional<std::span<const double>> l,
                      std::optional<std::span<const double>> u);
  /// New nonzero values for P (upper triangle) and/or A in their existing
  /// patterns. Reuses the symbolic factorization.
  void update_matrices(std::optional<std::span<const double>> P_values,
                       std::optional<std::span<const double>> A_values);

  // Step-level access.
  void iterate();
  /// Evaluates residuals at the current iterates; returns a terminal status
  /// when optimality or an infeasibility certificate is detected.
  std::optional<Status> check_termination();
  /// Applies the rho update rule behind its gate. Returns true if rho
  /// changed.
  bool adapt_rho();
  /// Unconditionally sets rho_bar (clamped) and refreshes the system.
  void set_rho(double rho_bar);
  void set_scaled_iterates(std::span<const double> x,
                           std::span<const double> z,
                           std::span<const double> y);

  const SolverState& state() const { return state_; }
  const Settings& settings() const { return settings_; }
  const ProblemData& problem() const { return problem_; }
  double sigma() const;

  Index symbolic_factorizations() const;
  Index numeric_factorizations() const;

 private:
  void setup();
  void build_rho_vector();
  void refresh_rho();
  void mark_factorized(double seconds);
  SolveResult finalize(Status status, double solve_seconds);

  ProblemData problem_;
  Settings settings_;
  SolverState state_;
  std::unique_ptr<LinearSystem> linsys_;
  bool factorization_failed_ = false;
  double pending_setup_seconds_ = 0.0;
  Vector rhs_x_;
  Vector rhs_z_;
};

}  // namespace qpsplit

#endif  // QPSPLIT_SOLVER_HPP
