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
#include "qpsplit/polish.hpp"
#include "qpsplit/probgen.hpp"
#include "qpsplit/solver.hpp"

namespace qt = qpsplit::testing;
using namespace qpsplit;

namespace {

struct ScalarFactor {
  SymbolicFactor sym;
  NumericFactor fac;
};

ScalarFactor factor_scalar(double k) {
  const CscMatrix K = CscMatrix::identity(1, k);
  ScalarFactor f;
  f.sym = symbolic_factor(K, Ordering::kNatural);
  f.fac = numeric_factor(K, f.sym);
  return f;
}

TEST(ActiveSets, Examples) {
  const ActiveSets none = guess_active_sets(Vector{0, 0, 0});
  EXPECT_TRUE(none.lower.empty());
  EXPECT_TRUE(none.upper.empty());
  const ActiveSets s = guess_active_sets(Vector{-1, 0, 2});
  EXPECT_EQ(s.lower, (std::vector<Index>{0}));
  EXPECT_EQ(s.upper, (std::vector<Index>{2}));
}

TEST(ActiveSets, FromSolvedLowerBound) {
  const ProblemData p = make_problem(CscMatrix::identity(1), {1}, CscMatrix::identity(1), {0},
                                     {kInf});
  const SolveResult r = Solver(p).solve();
  const ActiveSets s = guess_active_sets(r.y);
  EXPECT_EQ(s.lower, (std::vector<Index>{0}));
  EXPECT_TRUE(s.upper.empty());
}

TEST(Refine, ScalarRecursion) {
  const ScalarFactor f = factor_scalar(1.5);
  const MatVec k = [](std::span<const double> t, std::span<double> out) { out[0] = t[0]; };
  const Vector g{1.0};
  EXPECT_NEAR(iterative_refine(k, f.fac, f.sym, g, 0)[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(iterative_refine(k, f.fac, f.sym, g, 1)[0], 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(iterative_refine(k, f.fac, f.sym, g, 2)[0], 26.0 / 27.0, 1e-15);
}

TEST(Refine, ExactOperatorIsStationary) {
  const ScalarFactor f = factor_scalar(2.0);
  const MatVec k = [](std::span<const double> t, std::span<double> out) {
    out[0] = 2.0 * t[0];
  };
  const Vector g{3.0};
  EXPECT_EQ(iterative_refine(k, f.fac, f.sym, g, 0), iterative_refine(k, f.fac, f.sym, g, 1));
}

TEST(Refine, ErrorContractsOnReducedSystems) {
  qt::Families fam(50);
  for (int t = 0; t < 100; ++t) {
    const Index n = fam.integer(2, 8), m = fam.integer(1, n);
    const CscMatrix P = fam.psd(n, n);
    const CscMatrix A = fam.sparse(m, n, 0.7);
    if (Eigen::FullPivLU<qt::MatrixXd>(qt::dense(A)).rank() < m) continue;
    const double delta = 1e-6;
    const KktMatrix reg = form_kkt(P, A, delta, Vector(m, 1.0 / delta));
    const SymbolicFactor sym = symbolic_factor(reg);
    const NumericFactor fac = numeric_factor(reg, sym);
    qt::MatrixXd K = qt::MatrixXd::Zero(n + m, n + m);
    K.topLeftCorner(n, n) = qt::dense_symmetric(P);
    K.topRightCorner(n, m) = qt::dense(A).transpose();
    K.bottomLeftCorner(m, n) = qt::dense(A);
    const MatVec apply = [&](std::span<const double> x, std::span<double> out) {
      const qt::VectorXd y = K * qt::vec(x);
      for (Index i = 0; i < y.size(); ++i) out[i] = y[i];
    };
    Vector g(n + m);
    for (double& v : g) v = fam.normal();
    const qt::VectorXd exact = qt::dense_solve(K, qt::vec(g));
    double previous = INFINITY;
    for (Index steps = 0; steps <= 3; ++steps) {
      const double err =
          (qt::vec(iterative_refine(apply, fac, sym, g, steps)) - exact).norm();
      EXPECT_LE(err, std::max(previous, 1e-12 * exact.norm()));
      previous = err;
    }
  }
}

TEST(Polish, UnconstrainedScalar) {
  const ProblemData p = make_problem(CscMatrix::identity(1), {1}, CscMatrix(0, 1), {}, {});
  UnscaledPoint rough{{-0.9}, {}, {}};
  PolishOptions o;
  const PolishResult r = polish(p, rough, 0.0, 0.1, o);
  ASSERT_TRUE(r.accepted);
  EXPECT_LE(std::abs(r.point.x[0] + 1.0), 1e-15);
}

TEST(Polish, DuplicatedActiveRowStaysSolvable) {
  // x >= 1 stated twice.
  const std::vector<double> a{1, 1};
  const ProblemData p = make_problem(CscMatrix::identity(1), {0}, csc_from_dense(a, 2, 1),
                                     {1, 1}, {kInf, kInf});
  Settings s;
  const SolveResult r = Solver(p, s).solve();
  ASSERT_EQ(r.status, Status::kSolved);
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
  const KktResiduals before = kkt_residuals(p, r.x, r.y, r.z);
  PolishResult pr;
  ASSERT_NO_THROW(pr = polish(p, UnscaledPoint{{1.001}, {-0.5, -0.5}, {1.0, 1.0}},
                              before.prim, before.dual, PolishOptions{}));
  EXPECT_EQ(pr.sets.lower.size(), 2u);
  if (pr.accepted) EXPECT_NEAR(pr.point.x[0], 1.0, 1e-9);
}

TEST(Polish, ExactOnEqualityQps) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ProblemData p = gen_eq_qp(8, seed);
    // Well-conditioned constraint rows only.
    const Eigen::JacobiSVD<qt::MatrixXd> svd(qt::dense(p.A));
    if (svd.singularValues().minCoeff() < 1e-2) continue;
    const SolveResult r = Solver(p).solve();
    ASSERT_EQ(r.status, Status::kSolved);
    ++checked;
    EXPECT_TRUE(r.polish_succeeded());
    const qt::DenseResiduals res = qt::dense_residuals(p, r.x, r.y, r.z, 0, 0);
    EXPECT_LE(res.prim, 1e-9);
    EXPECT_LE(res.dual, 1e-9);
  }
  EXPECT_GE(checked, 5);
}

TEST(Polish, NeverIncreasesResiduals) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ProblemData p = gen_random_qp(12, seed);
    Settings off;
    off.polish = false;
    const SolveResult base = Solver(p, off).solve();
    const SolveResult pol = Solver(p).solve();
    ASSERT_EQ(base.iterations, pol.iterations);
    const auto a = qt::dense_residuals(p, base.x, base.y, base.z, 0, 0);
    const auto b = qt::dense_residuals(p, pol.x, pol.y, pol.z, 0, 0);
    EXPECT_LE(b.prim, a.prim);
    EXPECT_LE(b.dual, a.dual);
  }
}

TEST(Complementarity, Violation) {
  const ProblemData p = make_problem(CscMatrix::identity(1), {0}, CscMatrix::identity(1), {0},
                                     {1});
  EXPECT_EQ(complementarity_violation(p, Vector{-2}, Vector{0}), 0.0);
  EXPECT_DOUBLE_EQ(complementarity_violation(p, Vector{-2}, Vector{0.5}), 1.0);
  EXPECT_DOUBLE_EQ(complementarity_violation(p, Vector{3}, Vector{0.5}), 1.5);
}

}  // namespace
