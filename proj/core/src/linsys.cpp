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

#include "qpsplit/linsys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qpsplit {

ZeroPivot::ZeroPivot(Index column, double value)
    : std::runtime_error("zero pivot in LDL' factorization at column " +
                         std::to_string(column)),
      column_(column),
      value_(value) {}

namespace {

void check_kkt_inputs(const CscMatrix& P, const CscMatrix& A, double sigma,
                      std::span<const double> rho) {
  if (P.nrows != P.ncols) throw DimensionError("P must be square");
  if (!P.is_upper_triangular()) {
    throw std::invalid_argument("P must be upper triangular");
  }
  if (A.ncols != P.ncols) throw DimensionError("A and P column mismatch");
  if (static_cast<Index>(rho.size()) != A.nrows) {
    throw DimensionError("rho length must equal the number of rows of A");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  for (double r : rho) {
    if (!(r > 0.0)) throw std::invalid_argument("rho entries must be positive");
  }
}

}  // namespace

KktMatrix form_kkt(const CscMatrix& P, const CscMatrix& A, double sigma,
                   std::span<const double> rho) {
  check_kkt_inputs(P, A, sigma, rho);
  const Index n = P.ncols;
  const Index m = A.nrows;
  KktMatrix kkt;
  kkt.n = n;
  kkt.m = m;
  kkt.sigma = sigma;
  kkt.rho.assign(rho.begin(), rho.end());

  CscMatrix& K = kkt.K;
  K = CscMatrix(n + m, n + m);
  for (Index j = 0; j < n; ++j) {
    Index count = 1;
    for (Index p = P.colptr[j]; p < P.colptr[j + 1]; ++p) {
      if (P.rowind[p] < j) ++count;
    }
    K.colptr[j + 1] = count;
  }
  for (Index p = 0; p < A.nnz(); ++p) ++K.colptr[n + A.rowind[p] + 1];
  for (Index i = 0; i < m; ++i) ++K.colptr[n + i + 1];
  std::partial_sum(K.colptr.begin(), K.colptr.end(), K.colptr.begin());
  K.rowind.resize(K.colptr.back());
  K.values.resize(K.colptr.back());

  kkt.p_to_kkt.resize(P.nnz());
  kkt.a_to_kkt.resize(A.nnz());
  kkt.p_diag_positions.resize(n);
  kkt.rho_diag_positions.resize(m);

  for (Index j = 0; j < n; ++j) {
    Index slot = K.colptr[j];
    const Index diag = K.colptr[j + 1] - 1;
    K.rowind[diag] = j;
    K.values[diag] = sigma;
    kkt.p_diag_positions[j] = diag;
    for (Index p = P.colptr[j]; p < P.colptr[j + 1]; ++p) {
      const Index i = P.rowind[p];
      if (i == j) {
        K.values[diag] += P.values[p];
        kkt.p_to_kkt[p] = diag;
      } else {
        K.rowind[slot] = i;
        K.values[slot] = P.values[p];
        kkt.p_to_kkt[p] = slot++;
      }
    }
  }
  std::vector<Index> next(m);
  for (Index i = 0; i < m; ++i) next[i] = K.colptr[n + i];
  for (Index j = 0; j < n; ++j) {
    for (Index p = A.colptr[j]; p < A.colptr[j + 1]; ++p) {
      const Index slot = next[A.rowind[p]]++;
      K.rowind[slot] = j;
      K.values[slot] = A.values[p];
      kkt.a_to_kkt[p] = slot;
    }
  }
  for (Index i = 0; i < m; ++i) {
    const Index diag = K.colptr[n + i + 1] - 1;
    K.rowind[diag] = n + i;
    K.values[diag] = -1.0 / rho[i];
    kkt.rho_diag_positions[i] = diag;
  }
  return kkt;
}

void set_kkt_rho(KktMatrix& kkt, std::span<const double> rho) {
  if (static_cast<Index>(rho.size()) != kkt.m) {
    throw DimensionError("rho length mismatch");
  }
  for (Index i = 0; i < kkt.m; ++i) {
    if (!(rho[i] > 0.0)) throw std::invalid_argument("rho must be positive");
    kkt.K.values[kkt.rho_diag_positions[i]] = -1.0 / rho[i];
    kkt.rho[i] = rho[i];
  }
}

void set_kkt_matrix_values(KktMatrix& kkt, const CscMatrix& P,
                           const CscMatrix& A) {
  if (static_cast<Index>(kkt.p_to_kkt.size()) != P.nnz() ||
      static_cast<Index>(kkt.a_to_kkt.size()) != A.nnz()) {
    throw DimensionError("matrix update does not match the stored pattern");
  }
  for (Index slot : kkt.p_diag_positions) kkt.K.values[slot] = kkt.sigma;
  for (Index j = 0; j < P.ncols; ++j) {
    for (Index p = P.colptr[j]; p < P.colptr[j + 1]; ++p) {
      if (P.rowind[p] == j) {
        kkt.K.values[kkt.p_to_kkt[p]] += P.values[p];
      } else {
        kkt.K.values[kkt.p_to_kkt[p]] = P.values[p];
      }
    }
  }
  for (Index p = 0; p < A.nnz(); ++p) {
    kkt.K.values[kkt.a_to_kkt[p]] = A.values[p];
  }
}

Index SymbolicFactor::factor_nnz() const {
  return std::accumulate(lnz.begin(), lnz.end(), Index{0});
}

double SymbolicFactor::factor_work() const {
  double work = static_cast<double>(permuted.nnz());
  for (Index c : lnz) work += static_cast<double>(c) * static_cast<double>(c);
  return work;
}

double SymbolicFactor::solve_work() const {
  return 4.0 * static_cast<double>(factor_nnz()) + 3.0 * static_cast<double>(dim());
}

SymbolicFactor symbolic_factor(const CscMatrix& K_upper, Ordering ordering) {
  if (K_upper.nrows != K_upper.ncols) {
    throw DimensionError("KKT matrix must be square");
  }
  if (!K_upper.is_upper_triangular()) {
    throw std::invalid_argument("KKT matrix must be upper triangular");
  }
  const Index n = K_upper.ncols;
  SymbolicFactor sym;
  sym.perm = ordering == Ordering::kAmd ? amd_order(K_upper) : natural_order(n);
  sym.iperm = invert_permutation(sym.perm);

  // C = perm * K * perm', upper triangle, rows sorted within columns.
  CscMatrix& C = sym.permuted;
  C = CscMatrix(n, n);
  std::vector<Index> target_col(K_upper.nnz());
  for (Index j = 0; j < n; ++j) {
    for (Index p = K_upper.colptr[j]; p < K_upper.colptr[j + 1]; ++p) {
      const Index i2 = sym.iperm[K_upper.rowind[p]];
      const Index j2 = sym.iperm[j];
      target_col[p] = std::max(i2, j2);
      ++C.colptr[target_col[p] + 1];
    }
  }
  std::partial_sum(C.colptr.begin(), C.colptr.end(), C.colptr.begin());
  C.rowind.resize(K_upper.nnz());
  C.values.assign(K_upper.nnz(), 0.0);
  std::vector<Index> source(K_upper.nnz());
  {
    std::vector<Index> next(C.colptr.begin(), C.colptr.end() - 1);
    for (Index j = 0; j < n; ++j) {
      for (Index p = K_upper.colptr[j]; p < K_upper.colptr[j + 1]; ++p) {
        const Index i2 = sym.iperm[K_upper.rowind[p]];
        const Index j2 = sym.iperm[j];
        const Index slot = next[target_col[p]]++;
        C.rowind[slot] = std::min(i2, j2);
        source[slot] = p;
      }
    }
  }
  sym.kkt_to_permuted.resize(K_upper.nnz());
  std::vector<Index> order;
  for (Index j = 0; j < n; ++j) {
    const Index begin = C.colptr[j];
    const Index end = C.colptr[j + 1];
    order.resize(end - begin);
    std::iota(order.begin(), order.end(), begin);
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return C.rowind[a] < C.rowind[b]; });
    std::vector<Index> rows(order.size());
    for (size_t k = 0; k < order.size(); ++k) {
      rows[k] = C.rowind[order[k]];
      sym.kkt_to_permuted[source[order[k]]] = begin + static_cast<Index>(k);
    }
    std::copy(rows.begin(), rows.end(), C.rowind.begin() + begin);
  }

  // Elimination tree and column counts of L.
  sym.etree.assign(n, -1);
  sym.lnz.assign(n, 0);
  std::vector<Index> visited(n, -1);
  for (Index j = 0; j < n; ++j) {
    visited[j] = j;
    for (Index p = C.colptr[j]; p < C.colptr[j + 1]; ++p) {
      Index i = C.rowind[p];
      while (visited[i] != j) {
        if (sym.etree[i] == -1) sym.etree[i] = j;
        ++sym.lnz[i];
        visited[i] = j;
        i = sym.etree[i];
      }
    }
  }
  return sym;
}

NumericFactor numeric_factor(const CscMatrix& K_upper,
                             const SymbolicFactor& sym) {
  const Index n = sym.dim();
  if (K_upper.ncols != n ||
      static_cast<Index>(sym.kkt_to_permuted.size()) != K_upper.nnz()) {
    throw DimensionError("KKT pattern does not match the symbolic factor");
  }
  Vector cx(K_upper.nnz());
  for (Index p = 0; p < K_upper.nnz(); ++p) {
    cx[sym.kkt_to_permuted[p]] = K_upper.values[p];
  }
  const CscMatrix& C = sym.permuted;

  NumericFactor fac;
  CscMatrix& L = fac.L;
  L = CscMatrix(n, n);
  for (Index j = 0; j < n; ++j) L.colptr[j + 1] = L.colptr[j] + sym.lnz[j];
  L.rowind.resize(L.colptr.back());
  L.values.resize(L.colptr.back());
  fac.D.assign(n, 0.0);
  fac.Dinv.assign(n, 0.0);

  // Up-looking factorization: row k of L is obtained by a sparse triangular
  // solve whose pattern is the etree reach of column k of C.
  std::vector<Index> next_slot(L.colptr.begin(), L.colptr.end() - 1);
  std::vector<char> marked(n, 0);
  std::vector<Index> reach;
  std::vector<Index> stack;
  Vector y(n, 0.0);
  reach.reserve(n);
  stack.reserve(n);

  for (Index k = 0; k < n; ++k) {
    reach.clear();
    double dk = 0.0;
    for (Index p = C.colptr[k]; p < C.colptr[k + 1]; ++p) {
      const Index i = C.rowind[p];
      if (i == k) {
        dk += cx[p];
        continue;
      }
      y[i] = cx[p];
      Index v = i;
      stack.clear();
      while (v != -1 && v < k && !marked[v]) {
        marked[v] = 1;
        stack.push_back(v);
        v = sym.etree[v];
      }
      while (!stack.empty()) {
        reach.push_back(stack.back());
        stack.pop_back();
      }
    }
    // reach holds columns in reverse topological order; walk it backwards.
    for (auto it = reach.rbegin(); it != reach.rend(); ++it) {
      const Index c = *it;
      const double yc = y[c];
      const Index slot = next_slot[c];
      for (Index q = L.colptr[c]; q < slot; ++q) {
        y[L.rowind[q]] -= L.values[q] * yc;
      }
      const double lkc = yc * fac.Dinv[c];
      L.rowind[slot] = k;
      L.values[slot] = lkc;
      dk -= yc * lkc;
      ++next_slot[c];
      y[c] = 0.0;
      marked[c] = 0;
    }
    if (!(std::abs(dk) >= kZeroPivotThreshold)) throw ZeroPivot(k, dk);
    fac.D[k] = dk;
    fac.Dinv[k] = 1.0 / dk;
    if (dk > 0.0) {
      ++fac.positive_pivots;
    } else {
      ++fac.negative_pivots;
    }
  }
  return fac;
}

void kkt_solve_in_place(const NumericFactor& fac, const SymbolicFactor& sym,
                        std::span<double> rhs, std::span<double> work) {
  const Index n = sym.dim();
  if (static_cast<Index>(rhs.size()) != n ||
      static_cast<Index>(work.size()) != n) {
    throw DimensionError("KKT right-hand side has the wrong length");
  }
  const CscMatrix& L = fac.L;
  for (Index k = 0; k < n; ++k) work[k] = rhs[sym.perm[k]];
  for (Index j = 0; j < n; ++j) {
    const double xj = work[j];
    for (Index p = L.colptr[j]; p < L.colptr[j + 1]; ++p) {
      work[L.rowind[p]] -= L.values[p] * xj;
    }
  }
  for (Index j = 0; j < n; ++j) work[j] *= fac.Dinv[j];
  for (Index j = n - 1; j >= 0; --j) {
    double xj = work[j];
    for (Index p = L.colptr[j]; p < L.colptr[j + 1]; ++p) {
      xj -= L.values[p] * work[L.rowind[p]];
    }
    work[j] = xj;
  }
  for (Index k = 0; k < n; ++k) rhs[sym.perm[k]] = work[k];
}

Vector kkt_solve(const NumericFactor& fac, const SymbolicFactor& sym,
                 std::span<const double> rhs) {
  Vector x(rhs.begin(), rhs.end());
  Vector work(x.size());
  kkt_solve_in_place(fac, sym, x, work);
  return x;
}

NumericFactor update_rho_values(KktMatrix& kkt, std::span<const double> rho_new,
                                const SymbolicFactor& sym) {
  set_kkt_rho(kkt, rho_new);
  return numeric_factor(kkt.K, sym);
}

CgResult cg_solve_reduced(const CscMatrix& P, const CscMatrix& A, double sigma,
                          std::span<const double> rho,
                          std::span<const double> rhs_x,
                          std::span<const double> x_warm, double tol,
                          Index max_iter) {
  check_kkt_inputs(P, A, sigma, rho);
  const Index n = P.ncols;
  const Index m = A.nrows;
  if (static_cast<Index>(rhs_x.size()) != n) {
    throw DimensionError("rhs length mismatch");
  }
  if (!x_warm.empty() && static_cast<Index>(x_warm.size()) != n) {
    throw DimensionError("warm start length mismatch");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("CG tolerance must be positive");

  Vector precond(n, sigma);
  for (Index j = 0; j < n; ++j) {
    for (Index p = P.colptr[j]; p < P.colptr[j + 1]; ++p) {
      if (P.rowind[p] == j) precond[j] += P.values[p];
    }
    for (Index p = A.colptr[j]; p < A.colptr[j + 1]; ++p) {
      precond[j] += rho[A.rowind[p]] * A.values[p] * A.values[p];
    }
  }
  for (double& d : precond) d = d > 0.0 ? 1.0 / d : 1.0;

  Vector ax(m);
  auto apply = [&](std::span<const double> v, std::span<double> out) {
    for (Index j = 0; j < n; ++j) out[j] = sigma * v[j];
    spmv_add(P, v, out, SpmvMode::kSymmetricUpper);
    std::fill(ax.begin(), ax.end(), 0.0);
    spmv_add(A, v, ax);
    for (Index i = 0; i < m; ++i) ax[i] *= rho[i];
    spmv_add(A, ax, out, SpmvMode::kTranspose);
  };

  CgResult result;
  result.x = x_warm.empty() ? Vector(n, 0.0) : Vector(x_warm.begin(), x_warm.end());
  const double rhs_norm = std::sqrt(dot(rhs_x, rhs_x));
  if (rhs_norm == 0.0) {
    std::fill(result.x.begin(), result.x.end(), 0.0);
    result.converged = true;
    return result;
  }
  Vector r(n), z(n), p(n), kp(n);
  apply(result.x, kp);
  for (Index j = 0; j < n; ++j) r[j] = rhs_x[j] - kp[j];
  for (Index j = 0; j < n; ++j) z[j] = precond[j] * r[j];
  p = z;
  double rz = dot(r, z);
  double res = std::sqrt(dot(r, r));
  while (res > tol * rhs_norm && result.iterations < max_iter) {
    apply(p, kp);
    const double pkp = dot(p, kp);
    if (!(pkp > 0.0)) break;
    const double step = rz / pkp;
    for (Index j = 0; j < n; ++j) {
      result.x[j] += step * p[j];
      r[j] -= step * kp[j];
    }
    for (Index j = 0; j < n; ++j) z[j] = precond[j] * r[j];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (Index j = 0; j < n; ++j) p[j] = z[j] + beta * p[j];
    res = std::sqrt(dot(r, r));
    ++result.iterations;
  }
  result.relative_residual = res / rhs_norm;
  result.converged = res <= tol * rhs_norm;
  return result;
}

namespace {

class DirectLinearSystem final : public LinearSystem {
 public:
  DirectLinearSystem(const CscMatrix& P, const CscMatrix& A, double sigma,
                     std::span<const double> rho, Ordering ordering)
      : kkt_(form_kkt(P, A, sigma, rho)) {
    sym_ = symbolic_factor(kkt_.K, ordering);
    ++symbolic_count_;
    try {
      refactor();
    } catch (const ZeroPivot&) {
      kkt_.sigma *= 10.0;
      set_kkt_matrix_values(kkt_, P, A);
      refactor();
    }
    rhs_.resize(kkt_.n + kkt_.m);
    work_.resize(kkt_.n + kkt_.m);
  }

  void solve(std::span<const double> rhs_x, std::span<const double> rhs_z,
             std::span<double> x_tilde, std::span<double> z_tilde) override {
    const Index n = kkt_.n;
    const Index m = kkt_.m;
    std::copy(rhs_x.begin(), rhs_x.end(), rhs_.begin());
    std::copy(rhs_z.begin(), rhs_z.end(), rhs_.begin() + n);
    kkt_solve_in_place(fac_, sym_, rhs_, work_);
    std::copy(rhs_.begin(), rhs_.begin() + n, x_tilde.begin());
    // z_tilde = z + (nu - y) / rho = rhs_z + nu / rho
    for (Index i = 0; i < m; ++i) {
      z_tilde[i] = rhs_z[i] + rhs_[n + i] / kkt_.rho[i];
    }
  }

  void update_rho(std::span<const double> rho) override {
    set_kkt_rho(kkt_, rho);
    refactor();
  }

  void update_matrices(const CscMatrix& P, const CscMatrix& A) override {
    set_kkt_matrix_values(kkt_, P, A);
    refactor();
  }

  LinsysBackend backend() const override { return LinsysBackend::kDirect; }
  double sigma() const override { return kkt_.sigma; }
  double factor_work() const override { return sym_.factor_work(); }
  double solve_work() const override { return sym_.solve_work(); }

 private:
  void refactor() {
    ++numeric_count_;
    fac_ = numeric_factor(kkt_.K, sym_);
  }

  KktMatrix kkt_;
  SymbolicFactor sym_;
  NumericFactor fac_;
  Vector rhs_;
  Vector work_;
};

class IndirectLinearSystem final : public LinearSystem {
 public:
  IndirectLinearSystem(const CscMatrix& P, const CscMatrix& A, double sigma,
                       std::span<const double> rho, double tol, Index max_iter)
      : P_(P), A_(A), sigma_(sigma), rho_(rho.begin(), rho.end()), tol_(tol),
        max_iter_(max_iter), x_prev_(P.ncols, 0.0), rhs_(P.ncols),
        scaled_(A.nrows) {
    check_kkt_inputs(P, A, sigma, rho);
  }

  void solve(std::span<const double> rhs_x, std::span<const double> rhs_z,
             std::span<double> x_tilde, std::span<double> z_tilde) override {
    // sigma x - q + A'(rho z - y) = rhs_x + A'(rho .* rhs_z)
    std::copy(rhs_x.begin(), rhs_x.end(), rhs_.begin());
    for (size_t i = 0; i < scaled_.size(); ++i) scaled_[i] = rho_[i] * rhs_z[i];
    spmv_add(A_, scaled_, rhs_, SpmvMode::kTranspose);
    CgResult r = cg_solve_reduced(P_, A_, sigma_, rho_, rhs_, x_prev_, tol_,
                                  max_iter_);
    cg_iterations_ += r.iterations;
    x_prev_ = r.x;
    std::copy(r.x.begin(), r.x.end(), x_tilde.begin());
    std::fill(z_tilde.begin(), z_tilde.end(), 0.0);
    spmv_add(A_, r.x, z_tilde);
  }

  void update_rho(std::span<const double> rho) override {
    rho_.assign(rho.begin(), rho.end());
  }

  void update_matrices(const CscMatrix& P, const CscMatrix& A) override {
    if (P.nnz() != P_.nnz() || A.nnz() != A_.nnz()) {
      throw DimensionError("matrix update does not match the stored pattern");
    }
    P_ = P;
    A_ = A;
  }

  LinsysBackend backend() const override { return LinsysBackend::kIndirect; }
  double sigma() const override { return sigma_; }
  double factor_work() const override { return 0.0; }
  double solve_work() const override {
    return 4.0 * static_cast<double>(P_.nnz() + A_.nnz());
  }

 private:
  CscMatrix P_;
  CscMatrix A_;
  double sigma_;
  Vector rho_;
  double tol_;
  Index max_iter_;
  Vector x_prev_;
  Vector rhs_;
  Vector scaled_;
  Index cg_iterations_ = 0;
};

}  // namespace

std::unique_ptr<LinearSystem> make_linear_system(const CscMatrix& P,
                                                 const CscMatrix& A,
                                                 double sigma,
                                                 std::span<const double> rho,
                                                 const LinsysOptions& options) {
  if (options.backend == LinsysBackend::kIndirect) {
    return std::make_unique<IndirectLinearSystem>(P, A, sigma, rho,
                                                  options.cg_tol,
                                                  options.cg_max_iter);
  }
  return std::make_unique<DirectLinearSystem>(P, A, sigma, rho,
                                              options.ordering);
}

}  // namespace qpsplit
