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

#include "qpsplit/reference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

namespace qpsplit {

namespace {

enum class Side : signed char { kLower = -1, kUpper = 1 };

struct Member {
  Index row;
  Side side;
};

class Enumerator {
 public:
  Enumerator(const Eigen::MatrixXd& P, const Eigen::VectorXd& q,
             const Eigen::MatrixXd& A, const Vector& l, const Vector& u, double tol)
      : P_(P), q_(q), A_(A), l_(l), u_(u), tol_(tol) {
    for (Index i = 0; i < A.rows(); ++i) {
      const bool lower = std::isfinite(l[i]);
      const bool upper = std::isfinite(u[i]);
      if (lower && upper && l[i] == u[i]) {
        equalities_.push_back(i);
      } else if (lower || upper) {
        inequalities_.push_back(i);
      }
    }
  }

  std::optional<ReferenceResult> run() {
    const Index n = P_.rows();
    const Index max_k = std::min<Index>(n, static_cast<Index>(inequalities_.size()));
    for (Index k = 0; k <= max_k; ++k) {
      std::vector<Index> pick(k);
      for (Index i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        if (auto found = try_subset(pick)) return found;
        if (!next_combination(pick, static_cast<Index>(inequalities_.size()))) break;
      }
    }
    return std::nullopt;
  }

  Index candidates() const { return candidates_; }

 private:
  static bool next_combination(std::vector<Index>& pick, Index total) {
    const Index k = static_cast<Index>(pick.size());
    Index i = k - 1;
    while (i >= 0 && pick[i] == total - k + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (Index j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    return true;
  }

  std::optional<ReferenceResult> try_subset(const std::vector<Index>& pick) {
    // Each picked row may sit at any of its finite bounds.
    std::vector<std::vector<Side>> options;
    options.reserve(pick.size());
    for (Index p : pick) {
      const Index row = inequalities_[p];
      std::vector<Side> sides;
      if (std::isfinite(l_[row])) sides.push_back(Side::kLower);
      if (std::isfinite(u_[row])) sides.push_back(Side::kUpper);
      options.push_back(std::move(sides));
    }
    std::vector<std::size_t> choice(pick.size(), 0);
    std::vector<Member> members;
    while (true) {
      members.clear();
      for (Index e : equalities_) members.push_back({e, Side::kUpper});
      for (std::size_t j = 0; j < pick.size(); ++j) {
        members.push_back({inequalities_[pick[j]], options[j][choice[j]]});
      }
      if (auto found = try_members(members)) return found;
      std::size_t j = 0;
      while (j < choice.size() && ++choice[j] == options[j].size()) choice[j++] = 0;
      if (j == choice.size()) break;
    }
    return std::nullopt;
  }

  std::optional<ReferenceResult> try_members(const std::vector<Member>& members) {
    ++candidates_;
    const Index n = P_.rows();
    const Index w = static_cast<Index>(members.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + w, n + w);
    Eigen::VectorXd rhs(n + w);
    K.topLeftCorner(n, n) = P_;
    rhs.head(n) = -q_;
    for (Index j = 0; j < w; ++j) {
      const Index row = members[j].row;
      K.block(0, n + j, n, 1) = A_.row(row).transpose();
      K.block(n + j, 0, 1, n) = A_.row(row);
      rhs[n + j] = members[j].side == Side::kLower ? l_[row] : u_[row];
    }
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(K);
    const Eigen::VectorXd sol = cod.solve(rhs);
    const double scale =
        std::max({1.0, rhs.cwiseAbs().maxCoeff(), K.cwiseAbs().maxCoeff() * sol.cwiseAbs().maxCoeff()});
    if (!sol.allFinite() || (K * sol - rhs).cwiseAbs().maxCoeff() > tol_ * scale) {
      return std::nullopt;
    }

    const Eigen::VectorXd x = sol.head(n);
    const Eigen::VectorXd ax = A_ * x;
    for (Index i = 0; i < A_.rows(); ++i) {
      const double slack = tol_ * std::max(1.0, std::abs(ax[i]));
      if (ax[i] < l_[i] - slack || ax[i] > u_[i] + slack) return std::nullopt;
    }
    const double y_tol = tol_ * std::max(1.0, sol.tail(w).cwiseAbs().maxCoeff()) * 1e3;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(A_.rows());
    for (Index j = 0; j < w; ++j) {
      const double lambda = sol[n + j];
      const bool equality = j < static_cast<Index>(equalities_.size());
      if (!equality) {
        if (members[j].side == Side::kUpper && lambda < -y_tol) return std::nullopt;
        if (members[j].side == Side::kLower && lambda > y_tol) return std::nullopt;
      }
      y[members[j].row] += lambda;
    }

    ReferenceResult r;
    r.status = Status::kSolved;
    r.x.assign(x.data(), x.data() + n);
    r.y.assign(y.data(), y.data() + y.size());
    r.z.resize(A_.rows());
    for (Index i = 0; i < A_.rows(); ++i) r.z[i] = std::clamp(ax[i], l_[i], u_[i]);
    r.objective = 0.5 * x.dot(P_ * x) + q_.dot(x);
    return r;
  }

  const Eigen::MatrixXd& P_;
  const Eigen::VectorXd& q_;
  const Eigen::MatrixXd& A_;
  const Vector& l_;
  const Vector& u_;
  double tol_;
  std::vector<Index> equalities_;
  std::vector<Index> inequalities_;
  Index candidates_ = 0;
};

Eigen::MatrixXd dense_of(const CscMatrix& m) {
  const Vector d = m.to_dense();
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      d.data(), m.nrows, m.ncols);
}

}  // namespace

ReferenceResult dense_reference_solve(const ProblemData& problem, double tol) {
  problem.validate();
  const Index n = problem.n();
  const Index m = problem.m();
  if (n > kReferenceMaxVariables || m > kReferenceMaxConstraints) {
    throw DimensionError("reference solver is limited to 12 variables and 24 rows");
  }
  Vector l(m), u(m);
  for (Index i = 0; i < m; ++i) {
    l[i] = canonical_bound(problem.l[i]);
    u[i] = canonical_bound(problem.u[i]);
  }
  ReferenceResult result;
  if (problem.first_inconsistent_row()) {
    result.status = Status::kPrimalInfeasible;
    return result;
  }

  Eigen::MatrixXd P = dense_of(problem.P);
  P = P.selfadjointView<Eigen::Upper>();
  const Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(problem.q.data(), n);
  const Eigen::MatrixXd A = dense_of(problem.A);

  Enumerator search(P, q, A, l, u, tol);
  if (auto found = search.run()) {
    found->candidates = search.candidates();
    return *found;
  }
  result.candidates = search.candidates();

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  Enumerator phase1(I, zero, A, l, u, tol);
  const bool feasible = phase1.run().has_value();
  result.candidates += phase1.candidates();
  result.status = feasible ? Status::kDualInfeasible : Status::kPrimalInfeasible;
  return result;
}

}  // namespace qpsplit
