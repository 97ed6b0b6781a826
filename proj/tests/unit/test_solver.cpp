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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpsplit/probgen.hpp"
#include "qpsplit/reference.hpp"
#include "qpsplit/solver.hpp"

namespace qt = qpsplit::testing;
using namespace qpsplit;

namespace {

Settings unscaled_settings() {
  Settings s;
  s.scaling_iters = 0;
  s.polish = false;
  return s;
}

ProblemData box_problem(double p, double q, double l, double u) {
  return make_problem(CscMatrix::identity(1, p), {q}, CscMatrix::identity(1), {l}, {u});
}

ProblemData two_row_inconsistent() {
  const std::vector<double> a{1, -1};
  return make_problem(CscMatrix(1, 1), {0}, csc_from_dense(a, 2, 1), {-kInf, -kInf},
                      {-1, -1});
}

TEST(Settings, Validation) {
  Settings s;
  EXPECT_NO_THROW(s.validate());
  s.alpha = 2.5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = Settings{};
  s.rho = -1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_DOUBLE_EQ(high_accuracy_settings().eps_abs, 1e-5);
  EXPECT_DOUBLE_EQ(high_accuracy_settings().eps_rel, 1e-5);
}

TEST(Status, NamesRoundTrip) {
  for (Status s : {Status::kSolved, Status::kSolvedInaccurate, Status::kPrimalInfeasible,
                   Status::kDualInfeasible, Status::kMaxIterReached, Status::kTimeLimitReached,
                   Status::kNumericalError, Status::kUnsolved}) {
    EXPECT_EQ(status_from_string(to_string(s)), s);
  }
  EXPECT_FALSE(status_from_string("bogus"));
}

TEST(Setup, UnconstrainedScalar) {
  const ProblemData p = make_problem(CscMatrix::identity(1), {0}, CscMatrix(0, 1), {}, {});
  Solver solver(p);
  EXPECT_EQ(solver.symbolic_factorizations(), 1);
  const SolveResult r = solver.solve();
  EXPECT_EQ(r.status, Status::kSolved);
  EXPECT_NEAR(r.x[0], 0.0, 1e-9);
}

TEST(Setup, EqualityRowsGetScaledRho) {
  const ProblemData p = box_problem(1, 0, 1, 1);
  Solver solver(p);
  EXPECT_DOUBLE_EQ(solver.state().rho_vec[0], 1e3 * 0.1);
  EXPECT_TRUE(is_equality_row(1.0, 1.0));
  EXPECT_FALSE(is_equality_row(1.0, 1.0 + 1e-6));
}

TEST(Setup, InconsistentBoxIsPrimalInfeasible) {
  const ProblemData p = box_problem(1, 0, 2, 1);
  Solver solver(p);
  const SolveResult r = solver.solve();
  EXPECT_EQ(r.status, Status::kPrimalInfeasible);
  EXPECT_EQ(r.primal_infeasibility_certificate, (Vector{1.0}));
  EXPECT_EQ(r.iterations, 0);
}

TEST(Iterate, UnconstrainedFirstStep) {
  const ProblemData p = make_problem(CscMatrix::identity(1), {1}, CscMatrix(0, 1), {}, {});
  Settings s = unscaled_settings();
  s.alpha = 1.0;
  Solver solver(p, s);
  solver.iterate();
  EXPECT_NEAR(solver.state().x[0], -1.0 / (1.0 + 1e-6), 1e-15);
}

TEST(Iterate, FixedPointAtSolution) {
  // min 1/2|x|^2 + 1'x, x >= 0: x = 0, y = -1.
  const ProblemData p = make_problem(CscMatrix::identity(2), {1, 1}, CscMatrix::identity(2),
                                     {0, 0}, {kInf, kInf});
  Solver solver(p, unscaled_settings());
  solver.set_scaled_iterates(Vector{0, 0}, Vector{0, 0}, Vector{-1, -1});
  solver.iterate();
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(solver.state().x[i], 0.0, 1e-12);
    EXPECT_NEAR(solver.state().z[i], 0.0, 1e-12);
    EXPECT_NEAR(solver.state().y[i], -1.0, 1e-12);
  }
}

TEST(Iterate, FreeRowProjectionIsIdentity) {
  const ProblemData p = box_problem(1, 1, -kInf, kInf);
  Settings s = unscaled_settings();
  Solver solver(p, s);
  solver.iterate();
  const SolverState& st = solver.state();
  const double expected = s.alpha * st.z_tilde[0] + (1 - s.alpha) * 0.0;
  EXPECT_NEAR(st.z[0], expected, 1e-15);
  EXPECT_EQ(st.y[0], 0.0);
}

TEST(Termination, ExactPointSolved) {
  const ProblemData p = make_problem(CscMatrix::identity(2), {1, 1}, CscMatrix::identity(2),
                                     {0, 0}, {kInf, kInf});
  Solver solver(p, unscaled_settings());
  solver.set_scaled_iterates(Vector{0, 0}, Vector{0, 0}, Vector{-1, -1});
  EXPECT_EQ(solver.check_termination(), Status::kSolved);
}

TEST(Termination, LargeDualResidualContinues) {
  const ProblemData p = box_problem(1, 1, -1, 1);
  Solver solver(p, unscaled_settings());
  solver.set_scaled_iterates(Vector{0}, Vector{0}, Vector{0});
  EXPECT_FALSE(solver.check_termination().has_value());
}

TEST(Termination, NoConstraintsUsesDualOnly) {
  const ProblemData p = make_problem(CscMatrix::identity(1), {2}, CscMatrix(0, 1), {}, {});
  Solver solver(p, unscaled_settings());
  solver.set_scaled_iterates(Vector{-2}, {}, {});
  EXPECT_EQ(solver.check_termination(), Status::kSolved);
}

TEST(Infeasibility, PrimalCheck) {
  const ProblemData p = two_row_inconsistent();
  const ScalingResult s = ruiz_equilibrate(p, 1e-3, 0);
  EXPECT_FALSE(check_primal_infeasible(s, Vector{0, 0}, 1e-4));
  EXPECT_TRUE(check_primal_infeasible(s, Vector{1, 1}, 1e-4));
  EXPECT_TRUE(qt::primal_certificate_holds(p, Vector{1, 1}, 1e-4));
  EXPECT_FALSE(check_primal_infeasible(s, Vector{1, 0}, 1e-4));
}

TEST(Infeasibility, DualCheck) {
  const ProblemData p = make_problem(CscMatrix(1, 1), {1}, CscMatrix::identity(1), {-kInf}, {0});
  const ScalingResult s = ruiz_equilibrate(p, 1e-3, 0);
  EXPECT_FALSE(check_dual_infeasible(s, Vector{0}, 1e-4));
  EXPECT_TRUE(check_dual_infeasible(s, Vector{-1}, 1e-4));
  EXPECT_TRUE(qt::dual_certificate_holds(p, Vector{-1}, 1e-4));
  EXPECT_FALSE(check_dual_infeasible(s, Vector{1}, 1e-4));

  const ProblemData strict =
      make_problem(CscMatrix::identity(2), {1, 1}, CscMatrix(0, 2), {}, {});
  const ScalingResult t = ruiz_equilibrate(strict, 1e-3, 0);
  EXPECT_FALSE(check_dual_infeasible(t, Vector{-1, -1}, 1e-4));
}

TEST(Solve, BoxAtOrigin) {
  const SolveResult r = Solver(box_problem(1, 0, -1, 1)).solve();
  EXPECT_EQ(r.status, Status::kSolved);
  EXPECT_NEAR(r.x[0], 0.0, 1e-6);
  EXPECT_NEAR(r.y[0], 0.0, 1e-6);
  EXPECT_NEAR(r.objective, 0.0, 1e-9);
}

TEST(Solve, LowerActiveSign) {
  const SolveResult r = Solver(box_problem(1, 1, 0, kInf)).solve();
  EXPECT_EQ(r.status, Status::kSolved);
  EXPECT_NEAR(r.x[0], 0.0, 1e-6);
  EXPECT_NEAR(r.y[0], -1.0, 1e-6);
  EXPECT_NEAR(r.objective, 0.0, 1e-6);
}

TEST(Solve, InconsistentRowsGiveCertificate) {
  const ProblemData p = two_row_inconsistent();
  const SolveResult r = Solver(p).solve();
  EXPECT_EQ(r.status, Status::kPrimalInfeasible);
  EXPECT_TRUE(qt::primal_certificate_holds(p, r.primal_infeasibility_certificate, 1e-4));
  EXPECT_TRUE(r.x.empty());
}

TEST(Solve, UnboundedRayGivesCertificate) {
  const ProblemData p = make_problem(CscMatrix(1, 1), {1}, CscMatrix::identity(1), {-kInf}, {0});
  const SolveResult r = Solver(p).solve();
  EXPECT_EQ(r.status, Status::kDualInfeasible);
  EXPECT_TRUE(qt::dual_certificate_holds(p, r.dual_infeasibility_certificate, 1e-4));
}

TEST(Solve, MatchesReferenceOnRandomFeasibleQps) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    qt::Families fam(100 + seed);
    const ProblemData p = fam.feasible_qp(fam.integer(1, 6), fam.integer(1, 10));
    const ReferenceResult ref = dense_reference_solve(p);
    Settings s = high_accuracy_settings();
    const SolveResult r = Solver(p, s).solve();
    ASSERT_EQ(r.status, ref.status) << "seed " << seed;
    EXPECT_NEAR(r.objective, ref.objective, 1e-4 * std::max(1.0, std::abs(ref.objective)));
    EXPECT_TRUE(qt::dense_residuals(p, r.x, r.y, r.z, 1e-5, 1e-5).ok());
  }
}

TEST(Solve, IndirectBackendSolves) {
  Settings s;
  s.linsys_backend = LinsysBackend::kIndirect;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ProblemData p = gen_random_qp(8, seed);
    const SolveResult r = Solver(p, s).solve();
    ASSERT_EQ(r.status, Status::kSolved);
    EXPECT_TRUE(qt::dense_residuals(p, r.x, r.y, r.z, 1e-3, 1e-3).ok());
  }
}

TEST(Solve, MaxIterReported) {
  Settings s;
  s.max_iter = 3;
  s.check_termination = 1;
  const SolveResult r = Solver(gen_random_qp(20, 1), s).solve();
  EXPECT_TRUE(r.status == Status::kMaxIterReached || r.status == Status::kSolvedInaccurate);
  EXPECT_EQ(r.iterations, 3);
}

TEST(AdaptRho, BalancedRatioKeepsRho) {
  const ProblemData p = box_problem(1, 0, -1, 1);
  Settings s = unscaled_settings();
  s.linsys_backend = LinsysBackend::kIndirect;
  Solver solver(p, s);
  solver.set_scaled_iterates(Vector{1}, Vector{0.5}, Vector{-0.5});
  EXPECT_FALSE(solver.adapt_rho());
  EXPECT_EQ(solver.state().rho_bar, 0.1);
}

TEST(AdaptRho, LargeRatioFiresWhenGateOpen) {
  const ProblemData p = box_problem(1, 0, -1, 1);
  Settings s = unscaled_settings();
  Solver direct(p, s);
  direct.set_scaled_iterates(Vector{1}, Vector{0.5}, Vector{-0.995});
  // No iterations since the factorization: the work gate is closed.
  EXPECT_FALSE(direct.adapt_rho());
  for (int k = 0; k < 20; ++k) direct.iterate();
  direct.set_scaled_iterates(Vector{1}, Vector{0.5}, Vector{-0.995});
  const Index before = direct.numeric_factorizations();
  EXPECT_TRUE(direct.adapt_rho());
  EXPECT_NEAR(direct.state().rho_bar, 1.0, 1e-9);
  EXPECT_EQ(direct.numeric_factorizations(), before + 1);

  s.linsys_backend = LinsysBackend::kIndirect;
  Solver indirect(p, s);
  indirect.set_scaled_iterates(Vector{1}, Vector{0.5}, Vector{-0.995});
  EXPECT_TRUE(indirect.adapt_rho());
}

TEST(AdaptRho, CapIsRespected) {
  Settings s;
  s.adaptive_rho_max_updates = 1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SolveResult r = Solver(gen_optimal_control(4, seed), s).solve();
    EXPECT_LE(r.rho_updates, 1);
  }
}

TEST(WarmStart, ExactSolutionTerminatesAtFirstCheck) {
  const ProblemData p = gen_random_qp(10, 3);
  Solver solver(p);
  const SolveResult first = solver.solve();
  ASSERT_EQ(first.status, Status::kSolved);
  solver.warm_start(first.x, first.y);
  const SolveResult again = solver.solve();
  EXPECT_EQ(again.status, Status::kSolved);
  EXPECT_LE(again.iterations, solver.settings().check_termination);
}

TEST(WarmStart, ZerosMatchColdStart) {
  const ProblemData p = gen_random_qp(10, 4);
  Solver a(p);
  const SolveResult ra = a.solve();
  Solver b(p);
  b.warm_start(Vector(p.n(), 0.0), Vector(p.m(), 0.0));
  const SolveResult rb = b.solve();
  EXPECT_EQ(ra.iterations, rb.iterations);
  EXPECT_EQ(ra.x, rb.x);
}

TEST(UpdateVectors, SameCostNoRefactorization) {
  const ProblemData p = gen_portfolio(2, 1);
  Solver solver(p);
  solver.solve();
  const Index before = solver.numeric_factorizations();
  solver.update_vectors(std::span<const double>(p.q), std::nullopt, std::nullopt);
  EXPECT_EQ(solver.numeric_factorizations(), before);
}

TEST(UpdateVectors, EqualityFlipRefactorsOnce) {
  qt::Families fam(30);
  ProblemData p = fam.feasible_qp(4, 6);
  for (Index i = 0; i < p.m(); ++i) {
    if (p.l[i] == p.u[i]) p.u[i] = p.l[i] + 1.0;
  }
  p.l[0] = -1.0;
  p.u[0] = 1.0;
  Solver solver(p);
  const Index before = solver.numeric_factorizations();
  Vector l = p.l, u = p.u;
  l[0] = u[0] = 0.5;
  solver.update_vectors(std::nullopt, std::span<const double>(l), std::span<const double>(u));
  EXPECT_EQ(solver.numeric_factorizations(), before + 1);
  EXPECT_DOUBLE_EQ(solver.state().rho_vec[0], 1e3 * solver.state().rho_bar);
}

TEST(UpdateVectors, RejectsCrossedBounds) {
  Solver solver(box_problem(1, 0, -1, 1));
  const Vector l{2}, u{1};
  EXPECT_THROW(solver.update_vectors(std::nullopt, std::span<const double>(l),
                                     std::span<const double>(u)),
               std::invalid_argument);
}

TEST(UpdateVectors, MatchesFreshSolve) {
  const ProblemData p = gen_random_qp(10, 8);
  Solver solver(p);
  solver.solve();
  ProblemData q = p;
  for (double& v : q.q) v *= -1.0;
  solver.update_vectors(std::span<const double>(q.q), std::nullopt, std::nullopt);
  const SolveResult warm = solver.solve();
  const SolveResult cold = Solver(q).solve();
  EXPECT_EQ(warm.status, Status::kSolved);
  EXPECT_NEAR(warm.objective, cold.objective, 1e-3 * std::max(1.0, std::abs(cold.objective)));
}

TEST(UpdateMatrices, IdenticalValuesKeepSolution) {
  const ProblemData p = gen_random_qp(6, 2);
  Solver solver(p);
  const SolveResult a = solver.solve();
  solver.update_matrices(std::span<const double>(p.P.values),
                         std::span<const double>(p.A.values));
  EXPECT_EQ(solver.symbolic_factorizations(), 1);
  solver.cold_start();
  const SolveResult b = solver.solve();
  EXPECT_EQ(a.x, b.x);
}

TEST(UpdateMatrices, DoubledHessianMatchesReference) {
  qt::Families fam(31);
  const ProblemData p = fam.feasible_qp(5, 8);
  Solver solver(p, high_accuracy_settings());
  solver.solve();
  ProblemData doubled = p;
  for (double& v : doubled.P.values) v *= 2.0;
  const Index numeric_before = solver.numeric_factorizations();
  solver.update_matrices(std::span<const double>(doubled.P.values), std::nullopt);
  EXPECT_EQ(solver.symbolic_factorizations(), 1);
  EXPECT_GE(solver.numeric_factorizations(), numeric_before + 1);
  const SolveResult r = solver.solve();
  const ReferenceResult ref = dense_reference_solve(doubled);
  ASSERT_EQ(r.status, Status::kSolved);
  EXPECT_NEAR(r.objective, ref.objective, 1e-4 * std::max(1.0, std::abs(ref.objective)));
}

TEST(Determinism, RepeatedSolvesIdentical) {
  const ProblemData p = gen_svm(3, 5);
  const SolveResult a = Solver(p).solve();
  const SolveResult b = Solver(p).solve();
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}

}  // namespace
