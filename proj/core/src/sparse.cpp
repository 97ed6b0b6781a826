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

#include "qpsplit/sparse.hpp"

#include <algorithm>
#include <numeric>

namespace qpsplit {

namespace {

void check_dimension(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

CscMatrix::CscMatrix(Index rows, Index cols)
    : nrows(rows), ncols(cols), colptr(static_cast<size_t>(cols) + 1, 0) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

CscMatrix CscMatrix::identity(Index n, double scale) {
  CscMatrix m(n, n);
  m.rowind.resize(n);
  m.values.assign(n, scale);
  for (Index j = 0; j < n; ++j) {
    m.colptr[j + 1] = j + 1;
    m.rowind[j] = j;
  }
  return m;
}

void CscMatrix::validate() const {
  if (nrows < 0 || ncols < 0) {
    throw std::invalid_argument("negative matrix dimension");
  }
  if (colptr.size() != static_cast<size_t>(ncols) + 1) {
    throw std::invalid_argument("colptr length must be ncols + 1");
  }
  if (colptr.front() != 0) throw std::invalid_argument("colptr[0] must be 0");
  if (colptr.back() != nnz() || values.size() != rowind.size()) {
    throw std::invalid_argument("colptr[ncols] must equal nnz");
  }
  for (Index j = 0; j < ncols; ++j) {
    if (colptr[j + 1] < colptr[j]) {
      throw std::invalid_argument("colptr must be nondecreasing (column " +
                                  std::to_string(j) + ")");
    }
    for (Index p = colptr[j]; p < colptr[j + 1]; ++p) {
      const Index i = rowind[p];
      if (i < 0 || i >= nrows) {
        throw std::invalid_argument("row index out of range in column " +
                                    std::to_string(j));
      }
      if (p > colptr[j] && rowind[p - 1] >= i) {
        throw std::invalid_argument(
            "row indices must be strictly increasing in column " +
            std::to_string(j));
      }
    }
  }
}

bool CscMatrix::is_upper_triangular() const {
  for (Index j = 0; j < ncols; ++j) {
    for (Index p = colptr[j]; p < colptr[j + 1]; ++p) {
      if (rowind[p] > j) return false;
    }
  }
  return true;
}

std::vector<double> CscMatrix::to_dense() const {
  std::vector<double> dense(static_cast<size_t>(nrows * ncols), 0.0);
  for (Index j = 0; j < ncols; ++j) {
    for (Index p = colptr[j]; p < colptr[j + 1]; ++p) {
      dense[rowind[p] * ncols + j] += values[p];
    }
  }
  return dense;
}

double CscMatrix::coeff(Index row, Index col) const {
  const auto first = rowind.begin() + colptr[col];
  const auto last = rowind.begin() + colptr[col + 1];
  const auto it = std::lower_bound(first, last, row);
  if (it == last || *it != row) return 0.0;
  return values[it - rowind.begin()];
}

CscMatrix csc_from_triplets(std::span<const Index> rows,
                            std::span<const Index> cols,
                            std::span<const double> vals, Index nrows,
                            Index ncols, bool sum_duplicates) {
  check_dimension(rows.size() == cols.size() && rows.size() == vals.size(),
                  "triplet lists must have equal length");
  CscMatrix m(nrows, ncols);
  const size_t count = rows.size();
  for (size_t k = 0; k < count; ++k) {
    if (rows[k] < 0 || rows[k] >= nrows || cols[k] < 0 || cols[k] >= ncols) {
      throw DimensionError("triplet " + std::to_string(k) +
                           " has an index out of range");
    }
  }

  // Counting sort by column, then a stable sort by row within each column.
  std::vector<Index> counts(static_cast<size_t>(ncols) + 1, 0);
  for (size_t k = 0; k < count; ++k) ++counts[cols[k] + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  std::vector<size_t> order(count);
  {
    std::vector<Index> next(counts.begin(), counts.end() - 1);
    for (size_t k = 0; k < count; ++k) order[next[cols[k]]++] = k;
  }
  m.rowind.reserve(count);
  m.values.reserve(count);
  for (Index j = 0; j < ncols; ++j) {
    auto first = order.begin() + counts[j];
    auto last = order.begin() + counts[j + 1];
    std::stable_sort(first, last,
                     [&](size_t a, size_t b) { return rows[a] < rows[b]; });
    for (auto it = first; it != last; ++it) {
      const Index i = rows[*it];
      if (!m.rowind.empty() && m.nnz() > m.colptr[j] && m.rowind.back() == i) {
        if (!sum_duplicates) {
          throw std::invalid_argument("duplicate entry at (" +
                                      std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
        }
        m.values.back() += vals[*it];
      } else {
        m.rowind.push_back(i);
        m.values.push_back(vals[*it]);
      }
    }
    m.colptr[j + 1] = m.nnz();
  }
  return m;
}

Triplets to_triplets(const CscMatrix& m) {
  Triplets t;
  t.rows.reserve(m.nnz());
  t.cols.reserve(m.nnz());
  t.vals = m.values;
  for (Index j = 0; j < m.ncols; ++j) {
    for (Index p = m.colptr[j]; p < m.colptr[j + 1]; ++p) {
      t.rows.push_back(m.rowind[p]);
      t.cols.push_back(j);
    }
  }
  return t;
}

CscMatrix csc_from_dense(std::span<const double> row_major, Index nrows,
                         Index ncols, double drop_tol) {
  check_dimension(row_major.size() == static_cast<size_t>(nrows * ncols),
                  "dense buffer size does not match dimensions");
  CscMatrix m(nrows, ncols);
  for (Index j = 0; j < ncols; ++j) {
    for (Index i = 0; i < nrows; ++i) {
      const double v = row_major[i * ncols + j];
      if (v != 0.0 && std::abs(v) > drop_tol) {
        m.rowind.push_back(i);
        m.values.push_back(v);
      }
    }
    m.colptr[j + 1] = m.nnz();
  }
  return m;
}

CscMatrix transpose(const CscMatrix& m) {
  CscMatrix t(m.ncols, m.nrows);
  t.rowind.resize(m.nnz());
  t.values.resize(m.nnz());
  for (Index p = 0; p < m.nnz(); ++p) ++t.colptr[m.rowind[p] + 1];
  std::partial_sum(t.colptr.begin(), t.colptr.end(), t.colptr.begin());
  std::vector<Index> next(t.colptr.begin(), t.colptr.end() - 1);
  for (Index j = 0; j < m.ncols; ++j) {
    for (Index p = m.colptr[j]; p < m.colptr[j + 1]; ++p) {
      const Index q = next[m.rowind[p]]++;
      t.rowind[q] = j;
      t.values[q] = m.values[p];
    }
  }
  return t;
}

CscMatrix upper_triangle(const CscMatrix& m) {
  check_dimension(m.nrows == m.ncols, "upper_triangle needs a square matrix");
  CscMatrix u(m.nrows, m.ncols);
  for (Index j = 0; j < m.ncols; ++j) {
    for (Index p = m.colptr[j]; p < m.colptr[j + 1]; ++p) {
      if (m.rowind[p] <= j) {
        u.rowind.push_back(m.rowind[p]);
        u.values.push_back(m.values[p]);
      }
    }
    u.colptr[j + 1] = u.nnz();
  }
  return u;
}

void spmv_add(const CscMatrix& m, std::span<const double> x, std::span<double> y,
              SpmvMode mode, double alpha) {
  switch (mode) {
    case SpmvMode::kNormal:
      check_dimension(static_cast<Index>(x.size()) == m.ncols &&
                          static_cast<Index>(y.size()) == m.nrows,
                      "spmv dimension mismatch");
      for (Index j = 0; j < m.ncols; ++j) {
        const double xj = alpha * x[j];
        if (xj == 0.0) continue;
        for (Index p = m.colptr[j]; p < m.colptr[j + 1]; ++p) {
          y[m.rowind[p]] += m.values[p] * xj;
        }
      }
      break;
    case SpmvMode::kTranspose:
      check_dimension(static_cast<Index>(x.size()) == m.nrows &&
                          static_cast<Index>(y.size()) == m.ncols,
                      "spmv (transpose) dimension mismatch");
      for (Index j = 0; j < m.ncols; ++j) {
        double acc = 0.0;
        for (Index p = m.colptr[j]; p < m.colptr[j + 1]; ++p) {
          acc += m.values[p] * x[m.rowind[p]];
        }
        y[j] += alpha * acc;
      }
      break;
    case SpmvMode::kSymmetricUpper:
      check_dimension(m.nrows == m.ncols &&
                          static_cast<Index>(x.size()) == m.ncols &&
                          static_cast<Index>(y.size()) == m.nrows,
                      "symmetric spmv dimension mismatch");
      for (Index j = 0; j < m.ncols; ++j) {
        double acc = 0.0;
        for (Index p = m.colptr[j]; p < m.colptr[j + 1]; ++p) {
          const Index i = m.rowind[p];
          if (i > j) {
            throw std::invalid_argument(
                "symmetric spmv requires upper-triangular storage");
          }
          y[i] += alpha * m.values[p] * x[j];
          if (i != j) acc += m.values[p] * x[i];
        }
        y[j] += alpha * acc;
      }
      break;
  }
}

Vector spmv(const CscMatrix& m, std::span<const double> x, SpmvMode mode) {
  Vector y(mode == SpmvMode::kTranspose ? m.ncols : m.nrows, 0.0);
  spmv_add(m, x, y, mode, 1.0);
  return y;
}

Vector inf_norm_columns(const CscMatrix& m, bool symmetric_upper) {
  Vector norms(m.ncols, 0.0);
  for (Index j = 0; j < m.ncols; ++j) {
    for (Index p = m.colptr[j]; p < m.colptr[j + 1]; ++p) {
      const double a = std::abs(m.values[p]);
      norms[j] = std::max(norms[j], a);
      if (symmetric_upper) {
        const Index i = m.rowind[p];
        norms[i] = std::max(norms[i], a);
      }
    }
  }
  return norms;
}

Vector inf_norm_rows(const CscMatrix& m) {
  Vector norms(m.nrows, 0.0);
  for (Index p = 0; p < m.nnz(); ++p) {
    norms[m.rowind[p]] = std::max(norms[m.rowind[p]], std::abs(m.values[p]));
  }
  return norms;
}

void scale_rows_cols(CscMatrix& m, std::span<const double> left,
                     std::span<const double> right) {
  check_dimension(left.empty() || static_cast<Index>(left.size()) == m.nrows,
                  "row scaling length mismatch");
  check_dimension(right.empty() || static_cast<Index>(right.size()) == m.ncols,
                  "column scaling length mismatch");
  for (Index j = 0; j < m.ncols; ++j) {
    const double cj = right.empty() ? 1.0 : right[j];
    for (Index p = m.colptr[j]; p < m.colptr[j + 1]; ++p) {
      const double ri = left.empty() ? 1.0 : left[m.rowind[p]];
      m.values[p] *= ri * cj;
    }
  }
}

double inf_norm(std::span<const double> v) {
  double n = 0.0;
  for (double a : v) n = std::max(n, std::abs(a));
  return n;
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_dimension(a.size() == b.size(), "dot length mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace qpsplit
