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

#ifndef QPSPLIT_SPARSE_HPP
#define QPSPLIT_SPARSE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpsplit {

using Index = std::int64_t;
using Vector = std::vector<double>;

/// Bound values with magnitude at or above this threshold are infinite.
inline constexpr double kInfinityThreshold = 1e30;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_pos_inf(double v) { return v >= kInfinityThreshold; }
inline bool is_neg_inf(double v) { return v <= -kInfinityThreshold; }
inline bool is_finite_bound(double v) {
  return !is_pos_inf(v) && !is_neg_inf(v);
}

/// Maps any value beyond the threshold onto IEEE +-infinity.
inline double canonical_bound(double v) {
  if (is_pos_inf(v)) return kInf;
  if (is_neg_inf(v)) return -kInf;
  return v;
}

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Compressed sparse column matrix. Row indices are strictly increasing
/// inside each column.
struct CscMatrix {
  Index nrows = 0;
  Index ncols = 0;
  std::vector<Index> colptr{0};
  std::vector<Index> rowind;
  Vector values;

  CscMatrix() = default;
  CscMatrix(Index rows, Index cols);

  static CscMatrix identity(Index n, double scale = 1.0);

  Index nnz() const { return static_cast<Index>(rowind.size()); }
  bool empty() const { return nnz() == 0; }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
  bool is_upper_triangular() const;

  /// Row-major dense copy, intended for tests and small problems.
  std::vector<double> to_dense() const;
  double coeff(Index row, Index col) const;

  friend bool operator==(const CscMatrix&, const CscMatrix&) = default;
};

struct Triplets {
  std::vector<Index> rows;
  std::vector<Index> cols;
  Vector vals;
};

CscMatrix csc_from_triplets(std::span<const Index> rows,
                            std::span<const Index> cols,
                            std::span<const double> vals, Index nrows,
                            Index ncols, bool sum_duplicates = true);

/// Column-major triplet dump; feeding it back reproduces the matrix.
Triplets to_triplets(const CscMatrix& m);

CscMatrix csc_from_dense(std::span<const double> row_major, Index nrows,
                         Index ncols, double drop_tol = 0.0);

CscMatrix transpose(const CscMatrix& m);

/// Upper triangle (row <= col) of a square matrix.
CscMatrix upper_triangle(const CscMatrix& m);

enum class SpmvMode { kNormal, kTranspose, kSymmetricUpper };

/// y += alpha * op(M) x.
void spmv_add(const CscMatrix& m, std::span<const double> x, std::span<double> y,
              SpmvMode mode = SpmvMode::kNormal, double alpha = 1.0);

Vector spmv(const CscMatrix& m, std::span<const double> x,
            SpmvMode mode = SpmvMode::kNormal);

inline Vector spmv(const CscMatrix& m, std::span<const double> x,
                   bool transpose, bool symmetric_upper) {
  return spmv(m, x,
              symmetric_upper ? SpmvMode::kSymmetricUpper
              : transpose     ? SpmvMode::kTranspose
                              : SpmvMode::kNormal);
}

/// Per-column infinity norm. With symmetric_upper the norm is taken over
/// the full column implied by the stored upper triangle.
Vector inf_norm_columns(const CscMatrix& m, bool symmetric_upper = false);

/// Per-row infinity norm.
Vector inf_norm_rows(const CscMatrix& m);

/// M <- diag(left) * M * diag(right). Empty spans mean identity.
void scale_rows_cols(CscMatrix& m, std::span<const double> left,
                     std::span<const double> right);

// Dense vector helpers.
double inf_norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace qpsplit

#endif  // QPSPLIT_SPARSE_HPP
