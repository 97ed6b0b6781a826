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

#ifndef QPSPLIT_LINSYS_HPP
#define QPSPLIT_LINSYS_HPP

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "qpsplit/ordering.hpp"
#include "qpsplit/sparse.hpp"

namespace qpsplit {

/// Raised when a pivot of the LDL' factorization falls below
/// kZeroPivotThreshold in magnitude.
class ZeroPivot : public std::runtime_error {
 public:
  ZeroPivot(Index column, double value);
  Index column() const { return column_; }
  double value() const { return value_; }

 private:
  Index column_;
  double value_;
};

inline constexpr double kZeroPivotThreshold = 1e-15;

/// Upper triangle of [[P + sigma I, A'], [A, -diag(rho)^-1]].
///
/// Both diagonal blocks are structurally complete. The index maps let the
/// values be refreshed in place when rho, P or A change.
struct KktMatrix {
  CscMatrix K;
  Index n = 0;
  Index m = 0;
  double sigma = 0.0;
  Vector rho;
  std::vector<Index> rho_diag_positions;  // K.values slot of -1/rho_i
  std::vector<Index> p_diag_positions;    // K.values slot of (P + sigma I)_jj
  std::vector<Index> p_to_kkt;            // P.values[k] -> K.values slot
  std::vector<Index> a_to_kkt;            // A.values[k] -> K.values slot
};

KktMatrix form_kkt(const CscMatrix& P, const CscMatrix& A, double sigma,
                   std::span<const double> rho);

/// Overwrites the -1/rho_i entries. O(m).
void set_kkt_rho(KktMatrix& kkt, std::span<const double> rho);

/// Overwrites the P and A values; both patterns must be unchanged.
void set_kkt_matrix_values(KktMatrix& kkt, const CscMatrix& P,
                           const CscMatrix& A);

struct SymbolicFactor {
  std::vector<Index> perm;   // perm[k] = original index of pivot k
  std::vector<Index> iperm;
  std::vector<Index> etree;  // -1 marks a root
  std::vector<Index> lnz;    // strictly-lower nonzeros per column of L

  // Pattern of perm * K * perm' (upper) and the K.values -> C.values map.
  CscMatrix permuted;
  std::vector<Index> kkt_to_permuted;

  Index dim() const { return static_cast<Index>(perm.size()); }
  Index factor_nnz() const;
  /// Flop estimate of one numeric factorization and of one solve.
  double factor_work() const;
  double solve_work() const;
};

struct NumericFactor {
  CscMatrix L;  // strictly lower part of the unit lower-triangular factor
  Vector D;
  Vector Dinv;
  Index positive_pivots = 0;
  Index negative_pivots = 0;
};

SymbolicFactor symbolic_factor(const CscMatrix& K_upper,
                               Ordering ordering = Ordering::kAmd);
inline SymbolicFactor symbolic_factor(const KktMatrix& kkt,
                                      Ordering ordering = Ordering::kAmd) {
  return symbolic_factor(kkt.K, ordering);
}

/// LDL' of perm * K * perm' without pivoting. Throws ZeroPivot.
NumericFactor numeric_factor(const CscMatrix& K_upper,
                             const SymbolicFactor& sym);
inline NumericFactor numeric_factor(const KktMatrix& kkt,
                                    const SymbolicFactor& sym) {
  return numeric_factor(kkt.K, sym);
}

/// Solves K t = rhs in place: permute, L solve, scale by Dinv, L' solve,
/// unpermute.
void kkt_solve_in_place(const NumericFactor& fac, const SymbolicFactor& sym,
                        std::span<double> rhs, std::span<double> work);
Vector kkt_solve(const NumericFactor& fac, const SymbolicFactor& sym,
                 std::span<const double> rhs);

/// Writes rho_new into the KKT values and refactors with the cached
/// symbolic analysis.
NumericFactor update_rho_values(KktMatrix& kkt, std::span<const double> rho_new,
                                const SymbolicFactor& sym);

struct CgResult {
  Vector x;
  Index iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Jacobi-preconditioned CG on (P + sigma I + A' diag(rho) A) x = rhs_x,
/// warm-started from x_warm (may be empty).
CgResult cg_solve_reduced(const CscMatrix& P, const CscMatrix& A, double sigma,
                          std::span<const double> rho,
                          std::span<const double> rhs_x,
                          std::span<const double> x_warm, double tol,
                          Index max_iter);

enum class LinsysBackend { kDirect, kIndirect };

/// The per-iteration linear system of the ADMM loop. Given
/// rhs_x = sigma x - q and rhs_z = z - y / rho it returns x_tilde and
/// z_tilde.
class LinearSystem {
 public:
  virtual ~LinearSystem() = default;

  virtual void solve(std::span<const double> rhs_x,
                     std::span<const double> rhs_z, std::span<double> x_tilde,
                     std::span<double> z_tilde) = 0;
  virtual void update_rho(std::span<const double> rho) = 0;
  virtual void update_matrices(const CscMatrix& P, const CscMatrix& A) = 0;

  virtual LinsysBackend backend() const = 0;
  virtual double sigma() const = 0;

  Index symbolic_factorizations() const { return symbolic_count_; }
  Index numeric_factorizations() const { return numeric_count_; }
  /// Cost model used to gate rho updates: work of one refactorization and
  /// of one solve, in flops.
  virtual double factor_work() const = 0;
  virtual double solve_work() const = 0;

 protected:
  Index symbolic_count_ = 0;
  Index numeric_count_ = 0;
};

struct LinsysOptions {
  LinsysBackend backend = LinsysBackend::kDirect;
  Ordering ordering = Ordering::kAmd;
  double cg_tol = 1e-10;
  Index cg_max_iter = 500;
};

/// Builds and factors the system. The direct backend retries once with
/// sigma boosted tenfold on ZeroPivot and rethrows on a second failure.
std::unique_ptr<LinearSystem> make_linear_system(const CscMatrix& P,
                                                 const CscMatrix& A,
                                                 double sigma,
                                                 std::span<const double> rho,
                                                 const LinsysOptions& options);

}  // namespace qpsplit

#endif  // QPSPLIT_LINSYS_HPP
