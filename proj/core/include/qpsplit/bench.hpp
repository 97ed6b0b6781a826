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

#ifndef QPSPLIT_BENCH_HPP
#define QPSPLIT_BENCH_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpsplit/problem.hpp"
#include "qpsplit/settings.hpp"
#include "qpsplit/solver.hpp"

namespace qpsplit {

/// exp(mean(ln(t_i + shift))) - shift. Throws on empty input or negative
/// entries.
double shifted_geometric_mean(std::span<const double> times, double shift = 1.0);

/// g_s / min_s g_s for each entry.
std::vector<double> normalized_ratios(std::span<const double> means);

/// Optimality test on the original data, independent of solver internals:
///   |(Ax - u)_+ + (Ax - l)_-|_inf <= eps_prim
///   |Px + q + A'y|_inf            <= eps_dual
/// with eps_prim = eps_abs + eps_rel max(|Ax|, |z|) and
/// eps_dual = eps_abs + eps_rel max(|Px|, |A'y|, |q|). When z is empty the
/// projection of Ax onto [l, u] is used.
struct ExternalCheck {
  double prim_violation = 0.0;
  double dual_residual = 0.0;
  double eps_prim = 0.0;
  double eps_dual = 0.0;
  bool primal_ok = false;
  bool dual_ok = false;
  bool passed() const { return primal_ok && dual_ok; }
};

ExternalCheck external_optimality_check(const ProblemData& problem,
                                        std::span<const double> x,
                                        std::span<const double> y,
                                        std::span<const double> z, double eps_abs,
                                        double eps_rel);
ExternalCheck external_optimality_check(const ProblemData& problem,
                                        const SolveResult& result, double eps_abs,
                                        double eps_rel);

struct BenchOptions {
  Settings settings;
  Index repeat = 1;             // minimum runs per instance
  double failure_time = 1000.0;  // seconds charged to a failed instance
  double short_time = 0.01;     // instances faster than this are repeated
  Index short_repeat = 5;       // runs used for short instances
};

struct BenchRecord {
  std::string name;
  std::string cls;
  Index n = 0;
  Index m = 0;
  Index nnz = 0;
  Status status = Status::kUnsolved;
  bool check_passed = false;
  bool failed = true;
  double time = 0.0;  // median total time, or the failure time
  double setup = 0.0;
  double solve = 0.0;
  double polish = 0.0;
  Index iterations = 0;
  bool polish_succeeded = false;
  Index rho_updates = 0;
};

BenchRecord bench_instance(const std::string& name, const std::string& cls,
                           const ProblemData& problem, const BenchOptions& options);

/// Every *.json problem file in `dir`, in name order.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

std::vector<BenchRecord> bench_corpus(const std::filesystem::path& dir,
                                      const BenchOptions& options);

struct ClassSummary {
  std::string cls;
  Index instances = 0;
  Index failures = 0;
  double sgm_time = 0.0;
  double median_time = 0.0;
  double median_setup = 0.0;
  double median_solve = 0.0;
  double median_polish = 0.0;
  double median_iterations = 0.0;
  double max_iterations = 0.0;
  double polish_success_rate = 0.0;
  double median_rho_updates = 0.0;
  double max_rho_updates = 0.0;
};

/// One row per class in first-seen order, followed by an "all" row.
std::vector<ClassSummary> summarize(const std::vector<BenchRecord>& records);

std::string records_csv(const std::vector<BenchRecord>& records);
std::string summary_csv(const std::vector<ClassSummary>& rows);
std::string summary_table(const std::vector<ClassSummary>& rows);

/// Cold versus warm-started solves of a parametric sequence.
struct ParametricReport {
  std::string name;
  Index solves = 0;
  Index cold_iterations = 0;
  Index warm_iterations = 0;
  double cold_time = 0.0;
  double warm_time = 0.0;
  Index warm_rho_updates = 0;
  // Factorizations of the warm solver after its setup, split by cause.
  Index numeric_factorizations = 0;
  Index numeric_from_rho = 0;
  Index numeric_from_matrix_updates = 0;
  Index symbolic_factorizations = 0;
  Index failures = 0;  // solves without a solved status, either mode

  double iteration_ratio() const;
  double time_ratio() const;
};

/// Lasso path with `count` log-spaced lambdas from lambda_max down to
/// 0.01 lambda_max (linear cost updates only).
ParametricReport run_lasso_path(Index n, std::uint64_t seed, Index count,
                                const Settings& settings, std::optional<Index> rows = {});
/// Closed-loop MPC: the first input is applied and x_init updated each step.
ParametricReport run_mpc_simulation(Index nx, std::uint64_t seed, Index steps,
                                    const Settings& settings);
/// Portfolio back test: daily return updates (vector) and monthly risk
/// model updates (matrix values, fixed pattern).
ParametricReport run_portfolio_backtest(Index k, std::uint64_t seed, Index months,
                                        Index days_per_month, const Settings& settings,
                                        std::optional<Index> assets = {});

std::string parametric_table(const std::vector<ParametricReport>& reports);

}  // namespace qpsplit

#endif  // QPSPLIT_BENCH_HPP
