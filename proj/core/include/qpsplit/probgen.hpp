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

#ifndef QPSPLIT_PROBGEN_HPP
#define QPSPLIT_PROBGEN_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qpsplit/problem.hpp"

namespace qpsplit {

enum class ProblemClass {
  kRandomQp,
  kEqQp,
  kOptimalControl,
  kPortfolio,
  kLasso,
  kHuber,
  kSvm,
};

std::string_view to_string(ProblemClass cls);
std::optional<ProblemClass> problem_class_from_string(std::string_view name);
const std::vector<ProblemClass>& all_problem_classes();

/// Optional overrides of derived sizes, used to build small instances.
struct GenOptions {
  std::optional<Index> rows;     // constraint or data rows (m)
  std::optional<Index> horizon;  // optimal control horizon T
  std::optional<Index> assets;   // portfolio asset count
  std::optional<double> lambda;  // lasso / svm weight
  bool noise = true;             // lasso / huber measurement noise

  friend bool operator==(const GenOptions&, const GenOptions&) = default;
};

/// `dim` is n for most classes, n_x for optimal control and the factor
/// count k for portfolio.
struct GenSpec {
  ProblemClass cls = ProblemClass::kRandomQp;
  Index dim = 1;
  std::uint64_t seed = 0;
  GenOptions options;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

ProblemData generate(const GenSpec& spec);

ProblemData gen_random_qp(Index n, std::uint64_t seed, const GenOptions& opt = {});
ProblemData gen_eq_qp(Index n, std::uint64_t seed, const GenOptions& opt = {});
ProblemData gen_optimal_control(Index nx, std::uint64_t seed,
                                const GenOptions& opt = {});
ProblemData gen_portfolio(Index k, std::uint64_t seed, const GenOptions& opt = {});
ProblemData gen_lasso(Index n, std::uint64_t seed, const GenOptions& opt = {});
ProblemData gen_huber(Index n, std::uint64_t seed, const GenOptions& opt = {});
ProblemData gen_svm(Index n, std::uint64_t seed, const GenOptions& opt = {});

/// Linear time-invariant system with box constraints. Dense matrices are
/// row-major.
struct LtiSystem {
  Index nx = 0;
  Index nu = 0;
  Index horizon = 10;
  Vector A;       // nx x nx
  Vector B;       // nx x nu
  Vector q_diag;  // state cost Q = diag(q_diag)
  Vector r_diag;  // input cost R = diag(r_diag)
  Vector QT;      // nx x nx terminal cost
  Vector x_bar;
  Vector u_bar;
  Vector x_init;
};

LtiSystem make_lti_system(Index nx, std::uint64_t seed, Index horizon = 10);
ProblemData optimal_control_qp(const LtiSystem& sys);

/// Spectral radius of a dense row-major square matrix.
double spectral_radius(std::span<const double> A, Index n);

/// Stabilizing solution X of X = Q + A'XA - A'XB (R + B'XB)^-1 B'XA by
/// fixed-point iteration of the Riccati recursion from X = Q.
struct DareResult {
  Vector X;
  Index iterations = 0;
  double residual = 0.0;
  bool converged = false;
};
DareResult solve_dare(const LtiSystem& sys, double tol = 1e-10,
                      Index max_iter = 100000);
/// Max-abs entry of the DARE fixed-point residual at X.
double dare_residual(const LtiSystem& sys, std::span<const double> X);

struct LassoData {
  CscMatrix A;  // m x n data matrix
  Vector b;
  double lambda_max = 0.0;  // |A'b|_inf
};

LassoData make_lasso_data(Index n, std::uint64_t seed, const GenOptions& opt = {});
ProblemData lasso_qp(const LassoData& data, double lambda);
/// Linear cost of lasso_qp for a given lambda.
Vector lasso_cost(const LassoData& data, double lambda);

struct PortfolioData {
  Index n = 0;  // assets
  Index k = 0;  // factors
  Triplets F;   // n x k factor loadings
  Vector d;     // asset-specific risk
  Vector mu;    // expected returns
  double gamma = 1.0;
};

PortfolioData make_portfolio_data(Index k, std::uint64_t seed, const GenOptions& opt = {});
ProblemData portfolio_qp(const PortfolioData& data);

}  // namespace qpsplit

#endif  // QPSPLIT_PROBGEN_HPP
