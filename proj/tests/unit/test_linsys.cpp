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

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "qpsplit/linsys.hpp"
#include "qpsplit/ordering.hpp"

namespace qt = qpsplit::testing;
using namespace qpsplit;

namespace {

CscMatrix dense_upper(const std::vector<double>& rm, Index n) {
  std::vector<double> u(rm);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) u[i * n + j] = 0.0;
  }
  return csc_from_dense(u, n, n);
}

CscMatrix upper_of(const qt::MatrixXd& K) {
  const Index n = K.rows();
  std::vector<double> rm(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) rm[i * n + j] = i <= j ? K(i, j) : 0.0;
  }
  return csc_from_dense(rm, n, n);
}

qt::MatrixXd kkt_dense(const KktMatrix& k) { return qt::dense_symmetric(k.K); }

TEST(FormKkt, EmptyConstraintBlock) {
  const CscMatrix P(1, 1);
  const CscMatrix A(0, 1);
  const KktMatrix k = form_kkt(P, A, 1e-6, {});
  EXPECT_EQ(k.K.to_dense(), (std::vector<double>{1e-6}));
}

TEST(FormKkt, ScalarExample) {
  const CscMatrix P = CscMatrix::identity(1, 2.0);
  const CscMatrix A = CscMatrix::identity(1);
  const Vector rho{4.0};
  const KktMatrix k = form_kkt(P, A, 1.0, rho);
  const qt::MatrixXd expected = qt::dense_kkt(qt::dense(P), qt::dense(A), 1.0, rho);
  EXPECT_EQ(kkt_dense(k), expected);
  EXPECT_EQ(expected(0, 0), 3.0);
  EXPECT_EQ(expected(1, 1), -0.25);
}

TEST(FormKkt, ZeroHessian) {
  const CscMatrix P(2, 2);
  const CscMatrix A = CscMatrix::identity(2);
  const Vector rho{0.1, 0.1};
  const KktMatrix k = form_kkt(P, A, 1e-6, rho);
  qt::MatrixXd expected(4, 4);
  expected << 1e-6, 0, 1, 0, 0, 1e-6, 0, 1, 1, 0, -10, 0, 0, 1, 0, -10;
  EXPECT_TRUE(kkt_dense(k).isApprox(expected, 1e-15));
  EXPECT_TRUE(k.K.is_upper_triangular());
}

TEST(FormKkt, MatchesDenseAssembly) {
  qt::Families fam(5);
  for (int t = 0; t < 50; ++t) {
    const Index n = fam.integer(1, 8), m = fam.integer(0, 8);
    const CscMatrix P = fam.psd(n, fam.integer(0, n), 0.5);
    const CscMatrix A = m ? fam.sparse(m, n, 0.4) : CscMatrix(0, n);
    Vector rho(m);
    for (double& r : rho) r = fam.uniform(0.01, 10.0);
    const KktMatrix k = form_kkt(P, A, 1e-6, rho);
    const qt::MatrixXd expected = qt::dense_kkt(qt::dense_symmetric(P), qt::dense(A), 1e-6, rho);
    EXPECT_TRUE((kkt_dense(k) - expected).cwiseAbs().maxCoeff() <= 1e-14);
    for (Index i = 0; i < m; ++i) EXPECT_EQ(k.K.values[k.rho_diag_positions[i]], -1.0 / rho[i]);
  }
}

TEST(Symbolic, DiagonalHasNoFill) {
  const std::vector<double> d{2, 0, 0, 0, 3, 0, 0, 0, -1};
  const SymbolicFactor s = symbolic_factor(dense_upper(d, 3), Ordering::kNatural);
  EXPECT_EQ(s.lnz, (std::vector<Index>{0, 0, 0}));
  EXPECT_EQ(s.factor_nnz(), 0);
}

TEST(Symbolic, Arrowhead) {
  // Hub as the last row: no fill.
  const std::vector<double> last{4, 0, 0, 1, 0, 4, 0, 1, 0, 0, 4, 1, 1, 1, 1, 4};
  const SymbolicFactor a = symbolic_factor(dense_upper(last, 4), Ordering::kNatural);
  EXPECT_EQ(a.lnz, (std::vector<Index>{1, 1, 1, 0}));
  // Hub first: every later column fills.
  const std::vector<double> first{4, 1, 1, 1, 1, 4, 0, 0, 1, 0, 4, 0, 1, 0, 0, 4};
  const SymbolicFactor b = symbolic_factor(dense_upper(first, 4), Ordering::kNatural);
  EXPECT_EQ(b.lnz, (std::vector<Index>{3, 2, 1, 0}));
  EXPECT_EQ(b.lnz, qt::dense_symbolic_counts(qt::dense_symmetric(dense_upper(first, 4))));
  // The fill-reducing ordering delays the hub until no fill remains.
  const SymbolicFactor c = symbolic_factor(dense_upper(first, 4), Ordering::kAmd);
  EXPECT_NE(c.perm[0], 0);
  EXPECT_NE(c.perm[1], 0);
  EXPECT_EQ(c.factor_nnz(), 3);
}

TEST(Symbolic, Tridiagonal) {
  const Index n = 6;
  std::vector<double> d(n * n, 0.0);
  for (Index i = 0; i < n; ++i) {
    d[i * n + i] = 4;
    if (i + 1 < n) d[i * n + i + 1] = d[(i + 1) * n + i] = 1;
  }
  const SymbolicFactor s = symbolic_factor(dense_upper(d, n), Ordering::kNatural);
  EXPECT_EQ(s.lnz, (std::vector<Index>{1, 1, 1, 1, 1, 0}));
}

TEST(Symbolic, CountsMatchDenseElimination) {
  qt::Families fam(6);
  for (int t = 0; t < 100; ++t) {
    const Index n = fam.integer(1, 8), m = fam.integer(1, 8);
    const CscMatrix P = fam.psd(n, fam.integer(0, n), 0.4);
    const CscMatrix A = fam.sparse(m, n, 0.3);
    const KktMatrix k = form_kkt(P, A, 1e-6, Vector(m, 1.0));
    for (Ordering o : {Ordering::kNatural, Ordering::kAmd}) {
      const SymbolicFactor s = symbolic_factor(k, o);
      std::vector<Index> sorted(s.perm);
      std::sort(sorted.begin(), sorted.end());
      std::vector<Index> iota(sorted.size());
      std::iota(iota.begin(), iota.end(), 0);
      ASSERT_EQ(sorted, iota);
      for (Index i = 0; i < s.dim(); ++i) EXPECT_EQ(s.perm[s.iperm[i]], i);

      const qt::MatrixXd K = kkt_dense(k);
      qt::MatrixXd PKPt(K.rows(), K.cols());
      for (Index a = 0; a < K.rows(); ++a) {
        for (Index b = 0; b < K.cols(); ++b) PKPt(a, b) = K(s.perm[a], s.perm[b]);
      }
      EXPECT_EQ(s.lnz, qt::dense_symbolic_counts(PKPt));
    }
  }
}

TEST(Amd, NeverWorseThanNaturalOnArrowheads) {
  for (Index n = 3; n < 30; n += 4) {
    std::vector<double> d(n * n, 0.0);
    for (Index i = 0; i < n; ++i) {
      d[i * n + i] = 1;
      d[i] = d[i * n] = 1;
    }
    const CscMatrix K = dense_upper(d, n);
    EXPECT_EQ(symbolic_factor(K, Ordering::kAmd).factor_nnz(), n - 1);
    EXPECT_EQ(symbolic_factor(K, Ordering::kNatural).factor_nnz(), n * (n - 1) / 2);
  }
}

TEST(Numeric, Diagonal) {
  const std::vector<double> d{2, 0, 0, -5};
  const CscMatrix K = dense_upper(d, 2);
  const SymbolicFactor s = symbolic_factor(K, Ordering::kNatural);
  const NumericFactor f = numeric_factor(K, s);
  EXPECT_EQ(f.L.nnz(), 0);
  EXPECT_EQ(f.Dinv, (Vector{0.5, -0.2}));
}

TEST(Numeric, TwoByTwo) {
  const std::vector<double> d{1, 1, 1, -1};
  const CscMatrix K = dense_upper(d, 2);
  const SymbolicFactor s = symbolic_factor(K, Ordering::kNatural);
  const NumericFactor f = numeric_factor(K, s);
  EXPECT_EQ(f.L.coeff(1, 0), 1.0);
  EXPECT_EQ(f.D, (Vector{1, -2}));
  EXPECT_EQ(f.Dinv, (Vector{1, -0.5}));
  EXPECT_EQ(f.positive_pivots, 1);
  EXPECT_EQ(f.negative_pivots, 1);
}

TEST(Numeric, MatchesTextbookLdl) {
  const CscMatrix P = CscMatrix::identity(1, 2.0);
  const CscMatrix A = CscMatrix::identity(1);
  const KktMatrix k = form_kkt(P, A, 1.0, Vector{4.0});
  const SymbolicFactor s = symbolic_factor(k, Ordering::kNatural);
  const NumericFactor f = numeric_factor(k, s);
  const qt::DenseLdl ref = qt::dense_ldl(kkt_dense(k));
  EXPECT_DOUBLE_EQ(f.L.coeff(1, 0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(f.D[0], 3.0);
  EXPECT_DOUBLE_EQ(f.D[1], -0.25 - 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(f.D[1], ref.d[1]);
}

TEST(Numeric, AgreesWithDenseLdlOnWellConditionedKkt) {
  qt::Families fam(8);
  for (int t = 0; t < 100; ++t) {
    const Index n = fam.integer(1, 10), m = fam.integer(1, 10);
    const CscMatrix P = fam.psd(n, n, 0.5);
    const CscMatrix A = fam.sparse(m, n, 0.4);
    Vector rho(m);
    for (double& r : rho) r = fam.uniform(0.1, 10.0);
    const KktMatrix k = form_kkt(P, A, 0.1, rho);
    const SymbolicFactor s = symbolic_factor(k);
    const NumericFactor f = numeric_factor(k, s);
    const qt::MatrixXd K = kkt_dense(k);
    qt::MatrixXd PKPt(K.rows(), K.cols());
    for (Index a = 0; a < K.rows(); ++a) {
      for (Index b = 0; b < K.cols(); ++b) PKPt(a, b) = K(s.perm[a], s.perm[b]);
    }
    const qt::DenseLdl ref = qt::dense_ldl(PKPt);
    for (Index i = 0; i < K.rows(); ++i) {
      EXPECT_NEAR(f.D[i], ref.d[i], 1e-9 * std::max(1.0, std::abs(ref.d[i])));
      EXPECT_EQ(f.Dinv[i], 1.0 / f.D[i]);
    }
    EXPECT_TRUE((qt::dense(f.L) + qt::MatrixXd::Identity(K.rows(), K.cols()))
                    .isApprox(ref.L, 1e-9));
    EXPECT_EQ(f.positive_pivots, n);
    EXPECT_EQ(f.negative_pivots, m);
  }
}

TEST(Numeric, ZeroPivotRaises) {
  const std::vector<double> d{0, 1, 1, 0};
  const CscMatrix K = dense_upper(d, 2);
  const SymbolicFactor s = symbolic_factor(K, Ordering::kNatural);
  EXPECT_THROW(numeric_factor(K, s), ZeroPivot);
}

TEST(Solve, Identity) {
  const CscMatrix K = CscMatrix::identity(3);
  const SymbolicFactor s = symbolic_factor(K);
  const NumericFactor f = numeric_factor(K, s);
  const Vector rhs{1, -2, 3};
  EXPECT_EQ(kkt_solve(f, s, rhs), rhs);
}

TEST(Solve, TwoByTwo) {
  const std::vector<double> d{1, 1, 1, -1};
  const CscMatrix K = dense_upper(d, 2);
  const SymbolicFactor s = symbolic_factor(K);
  const NumericFactor f = numeric_factor(K, s);
  const Vector t = kkt_solve(f, s, Vector{1, 0});
  EXPECT_DOUBLE_EQ(t[0], 0.5);
  EXPECT_DOUBLE_EQ(t[1], 0.5);
}

TEST(Solve, MatchesDenseSolve) {
  const KktMatrix k = form_kkt(CscMatrix(2, 2), CscMatrix::identity(2), 1e-6, Vector{0.1, 0.1});
  const SymbolicFactor s = symbolic_factor(k);
  const NumericFactor f = numeric_factor(k, s);
  const Vector t = kkt_solve(f, s, Vector{1, 0, 0, 0});
  const qt::VectorXd ref = qt::dense_solve(kkt_dense(k), qt::VectorXd::Unit(4, 0));
  for (Index i = 0; i < 4; ++i) EXPECT_NEAR(t[i], ref[i], 1e-9 * std::max(1.0, std::abs(ref[i])));
}

TEST(Solve, ResidualOnWellConditionedInstances) {
  qt::Families fam(9);
  for (int t = 0; t < 200; ++t) {
    const Index n = fam.integer(1, 12), m = fam.integer(1, 12);
    const CscMatrix P = fam.psd(n, n, 0.5);
    const CscMatrix A = fam.sparse(m, n, 0.4);
    Vector rho(m);
    for (double& r : rho) r = fam.uniform(0.1, 10.0);
    const KktMatrix k = form_kkt(P, A, 1e-2, rho);
    const SymbolicFactor s = symbolic_factor(k);
    const NumericFactor f = numeric_factor(k, s);
    qt::VectorXd rhs(n + m);
    for (Index i = 0; i < n + m; ++i) rhs[i] = fam.normal();
    const Vector x = kkt_solve(f, s, qt::to_vector(rhs));
    const double res = (kkt_dense(k) * qt::vec(x) - rhs).cwiseAbs().maxCoeff();
    EXPECT_LE(res, 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST(UpdateRho, UnchangedIsBitwiseEqual) {
  KktMatrix k = form_kkt(CscMatrix::identity(1, 2.0), CscMatrix::identity(1), 1.0, Vector{4.0});
  const SymbolicFactor s = symbolic_factor(k);
  const NumericFactor f0 = numeric_factor(k, s);
  const NumericFactor f1 = update_rho_values(k, Vector{4.0}, s);
  EXPECT_EQ(f0.D, f1.D);
  EXPECT_EQ(f0.L, f1.L);
}

TEST(UpdateRho, MatchesFreshFactor) {
  KktMatrix k = form_kkt(CscMatrix::identity(1, 2.0), CscMatrix::identity(1), 1.0, Vector{4.0});
  const SymbolicFactor s = symbolic_factor(k);
  const NumericFactor f = update_rho_values(k, Vector{1.0}, s);
  EXPECT_EQ(kkt_dense(k)(1, 1), -1.0);
  const KktMatrix fresh = form_kkt(CscMatrix::identity(1, 2.0), CscMatrix::identity(1), 1.0,
                                   Vector{1.0});
  const NumericFactor g = numeric_factor(fresh, symbolic_factor(fresh));
  EXPECT_EQ(f.D, g.D);
}

TEST(UpdateRho, EmptyConstraintBlock) {
  KktMatrix k = form_kkt(CscMatrix::identity(2), CscMatrix(0, 2), 1e-6, {});
  const SymbolicFactor s = symbolic_factor(k);
  const NumericFactor f0 = numeric_factor(k, s);
  const NumericFactor f1 = update_rho_values(k, {}, s);
  EXPECT_EQ(f0.D, f1.D);
}

TEST(Cg, DiagonalSystem) {
  const CscMatrix P = CscMatrix::identity(3);
  const CscMatrix A(0, 3);
  const Vector rhs{1, 2, 3}, warm(3, 0.0);
  const CgResult r = cg_solve_reduced(P, A, 1e-6, {}, rhs, warm, 1e-12, 50);
  ASSERT_TRUE(r.converged);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.x[i], rhs[i] / (1 + 1e-6), 1e-12);
}

TEST(Cg, ScalarReducedSystem) {
  const CgResult r = cg_solve_reduced(CscMatrix::identity(1, 2.0), CscMatrix::identity(1), 1.0,
                                      Vector{4.0}, Vector{7.0}, Vector{0.0}, 1e-12, 10);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
}

TEST(Cg, MatchesDenseSolve) {
  qt::Families fam(10);
  const CscMatrix P = fam.psd(5, 5);
  const CscMatrix A = fam.sparse(4, 5, 0.6);
  const Vector rho{0.5, 1.0, 2.0, 3.0};
  Vector rhs(5);
  for (double& v : rhs) v = fam.normal();
  const CgResult r = cg_solve_reduced(P, A, 1e-6, rho, rhs, Vector(5, 0.0), 1e-12, 200);
  const qt::MatrixXd Ad = qt::dense(A);
  const qt::MatrixXd M = qt::dense_symmetric(P) + 1e-6 * qt::MatrixXd::Identity(5, 5) +
                         Ad.transpose() * qt::vec(rho).asDiagonal() * Ad;
  const qt::VectorXd ref = qt::dense_solve(M, qt::vec(rhs));
  EXPECT_LE((qt::vec(r.x) - ref).cwiseAbs().maxCoeff(), 1e-8 * ref.cwiseAbs().maxCoeff());
}

TEST(LinearSystem, DirectAndIndirectAgree) {
  qt::Families fam(11);
  for (int t = 0; t < 30; ++t) {
    const Index n = fam.integer(1, 10), m = fam.integer(1, 10);
    const CscMatrix P = fam.psd(n, fam.integer(1, n), 0.6);
    const CscMatrix A = fam.sparse(m, n, 0.5);
    Vector rho(m);
    for (double& r : rho) r = fam.uniform(0.05, 5.0);
    LinsysOptions direct;
    LinsysOptions indirect;
    indirect.backend = LinsysBackend::kIndirect;
    indirect.cg_tol = 1e-12;
    indirect.cg_max_iter = 1000;
    auto d = make_linear_system(P, A, 1e-3, rho, direct);
    auto c = make_linear_system(P, A, 1e-3, rho, indirect);
    Vector rx(n), rz(m);
    for (double& v : rx) v = fam.normal();
    for (double& v : rz) v = fam.normal();
    Vector xd(n), zd(m), xc(n), zc(m);
    d->solve(rx, rz, xd, zd);
    c->solve(rx, rz, xc, zc);
    for (Index j = 0; j < n; ++j) EXPECT_NEAR(xd[j], xc[j], 1e-6 * (1 + std::abs(xd[j])));
    for (Index i = 0; i < m; ++i) EXPECT_NEAR(zd[i], zc[i], 1e-6 * (1 + std::abs(zd[i])));
  }
}

TEST(LinearSystem, CountersTrackFactorizations) {
  const CscMatrix P = CscMatrix::identity(2);
  const CscMatrix A = CscMatrix::identity(2);
  auto ls = make_linear_system(P, A, 1e-6, Vector{1, 1}, {});
  EXPECT_EQ(ls->symbolic_factorizations(), 1);
  EXPECT_EQ(ls->numeric_factorizations(), 1);
  ls->update_rho(Vector{2, 2});
  EXPECT_EQ(ls->numeric_factorizations(), 2);
  ls->update_matrices(CscMatrix::identity(2, 3.0), A);
  EXPECT_EQ(ls->symbolic_factorizations(), 1);
  EXPECT_EQ(ls->numeric_factorizations(), 3);
  EXPECT_GT(ls->factor_work(), 0.0);
  EXPECT_GT(ls->solve_work(), 0.0);
}

}  // namespace
