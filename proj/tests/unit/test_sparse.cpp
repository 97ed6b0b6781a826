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

#include <vector>

#include "oracles.hpp"
#include "qpsplit/sparse.hpp"

namespace qt = qpsplit::testing;
using namespace qpsplit;

namespace {

std::vector<double> dense_of(const CscMatrix& m) { return m.to_dense(); }

TEST(Triplets, IdentityScatter) {
  const std::vector<Index> r{0, 1}, c{0, 1};
  const std::vector<double> v{1, 1};
  const CscMatrix m = csc_from_triplets(r, c, v, 2, 2);
  EXPECT_EQ(dense_of(m), (std::vector<double>{1, 0, 0, 1}));
}

TEST(Triplets, DuplicatesAreSummed) {
  const std::vector<Index> r{0, 0}, c{0, 0};
  const std::vector<double> v{2, 3};
  const CscMatrix m = csc_from_triplets(r, c, v, 1, 1);
  ASSERT_EQ(m.nnz(), 1);
  EXPECT_EQ(m.values[0], 5.0);
}

TEST(Triplets, MatchesDenseScatter) {
  const std::vector<Index> r{0, 2, 1}, c{0, 0, 1};
  const std::vector<double> v{1, 4, 7};
  const CscMatrix m = csc_from_triplets(r, c, v, 3, 2);
  EXPECT_EQ(dense_of(m), (std::vector<double>{1, 0, 0, 7, 4, 0}));
  EXPECT_EQ(qt::dense(m), qt::scatter(r, c, v, 3, 2));
}

TEST(Triplets, RoundTrip) {
  qt::Families fam(1);
  for (int k = 0; k < 20; ++k) {
    const CscMatrix m = fam.sparse(fam.integer(1, 9), fam.integer(1, 9), 0.4);
    const Triplets t = to_triplets(m);
    EXPECT_EQ(csc_from_triplets(t.rows, t.cols, t.vals, m.nrows, m.ncols), m);
  }
}

TEST(Triplets, RejectsOutOfRange) {
  const std::vector<Index> r{3}, c{0};
  const std::vector<double> v{1};
  EXPECT_THROW(csc_from_triplets(r, c, v, 2, 2), std::invalid_argument);
}

TEST(Csc, ValidateDetectsUnsortedRows) {
  CscMatrix m(2, 1);
  m.colptr = {0, 2};
  m.rowind = {1, 0};
  m.values = {1, 1};
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(Csc, TransposeAndUpper) {
  const std::vector<double> d{1, 2, 3, 4};
  const CscMatrix m = csc_from_dense(d, 2, 2);
  EXPECT_EQ(transpose(m).to_dense(), (std::vector<double>{1, 3, 2, 4}));
  EXPECT_EQ(upper_triangle(m).to_dense(), (std::vector<double>{1, 2, 0, 4}));
  EXPECT_TRUE(upper_triangle(m).is_upper_triangular());
  EXPECT_FALSE(m.is_upper_triangular());
}

TEST(Spmv, Identity) {
  const CscMatrix I = CscMatrix::identity(3);
  const std::vector<double> x{5, -1, 2};
  EXPECT_EQ(spmv(I, x), x);
}

TEST(Spmv, NormalAndTranspose) {
  const std::vector<double> d{1, 2, 3, 4};
  const CscMatrix m = csc_from_dense(d, 2, 2);
  const std::vector<double> x{1, 1};
  EXPECT_EQ(spmv(m, x, false, false), (std::vector<double>{3, 7}));
  EXPECT_EQ(spmv(m, x, true, false), (std::vector<double>{4, 6}));
}

TEST(Spmv, SymmetricUpper) {
  const std::vector<double> d{2, 1, 0, 3};
  const CscMatrix m = csc_from_dense(d, 2, 2);
  const std::vector<double> x{1, 1};
  EXPECT_EQ(spmv(m, x, SpmvMode::kSymmetricUpper), (std::vector<double>{3, 4}));
}

TEST(Spmv, AgreesWithDenseOracle) {
  qt::Families fam(2);
  for (int k = 0; k < 30; ++k) {
    const Index r = fam.integer(1, 10), c = fam.integer(1, 10);
    const CscMatrix m = fam.sparse(r, c, 0.3);
    std::vector<double> x(c), y(r);
    for (double& v : x) v = fam.normal();
    for (double& v : y) v = fam.normal();
    const qt::VectorXd ax = qt::dense(m) * qt::vec(x);
    const qt::VectorXd aty = qt::dense(m).transpose() * qt::vec(y);
    const Vector got = spmv(m, x);
    const Vector got_t = spmv(m, y, SpmvMode::kTranspose);
    for (Index i = 0; i < r; ++i) EXPECT_NEAR(got[i], ax[i], 1e-12);
    for (Index j = 0; j < c; ++j) EXPECT_NEAR(got_t[j], aty[j], 1e-12);

    const CscMatrix p = fam.psd(c, c);
    const qt::VectorXd px = qt::dense_symmetric(p) * qt::vec(x);
    const Vector got_p = spmv(p, x, SpmvMode::kSymmetricUpper);
    for (Index j = 0; j < c; ++j) EXPECT_NEAR(got_p[j], px[j], 1e-10 * (1 + std::abs(px[j])));
  }
}

TEST(Spmv, DimensionMismatchThrows) {
  const CscMatrix I = CscMatrix::identity(3);
  const std::vector<double> x{1, 2};
  EXPECT_THROW(spmv(I, x), DimensionError);
}

TEST(Norms, Columns) {
  EXPECT_EQ(inf_norm_columns(CscMatrix::identity(4)), (Vector{1, 1, 1, 1}));
  const std::vector<double> d{1, -5, 2, 0};
  EXPECT_EQ(inf_norm_columns(csc_from_dense(d, 2, 2)), (Vector{2, 5}));
  const std::vector<double> z{1, 0, 2, 0};
  EXPECT_EQ(inf_norm_columns(csc_from_dense(z, 2, 2)), (Vector{2, 0}));
}

TEST(Norms, SymmetricColumnsSeeLowerTriangle) {
  const std::vector<double> d{1, 7, 0, 2};
  const CscMatrix upper = csc_from_dense(d, 2, 2);
  EXPECT_EQ(inf_norm_columns(upper, true), (Vector{7, 7}));
  EXPECT_EQ(inf_norm_rows(upper), (Vector{7, 2}));
}

TEST(Scaling, RowsAndColumns) {
  const std::vector<double> d{1, 2, 3, 4};
  CscMatrix m = csc_from_dense(d, 2, 2);
  const Vector left{2, 3}, right{1, 10};
  scale_rows_cols(m, left, right);
  EXPECT_EQ(m.to_dense(), (std::vector<double>{2, 40, 9, 120}));
}

TEST(Bounds, Canonicalization) {
  EXPECT_EQ(canonical_bound(1e30), kInf);
  EXPECT_EQ(canonical_bound(-2e30), -kInf);
  EXPECT_EQ(canonical_bound(5.0), 5.0);
  EXPECT_TRUE(is_finite_bound(9.9e29));
}

}  // namespace
