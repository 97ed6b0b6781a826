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

#include "qpsplit/probgen.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpsplit/random.hpp"

namespace qpsplit {

namespace {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, Index>;

constexpr double kDensity = 0.15;
constexpr double kRegularization = 1e-2;

// Stream ids keep each random quantity independent of the others, so that
// changing one size does not shift unrelated draws.
enum Stream : std::uint64_t {
  kStreamM = 1,
  kStreamA,
  kStreamQ,
  kStreamBounds,
  kStreamB,
  kStreamTruth,
  kStreamNoise,
  kStreamCost,
  kStreamFactor,
  kStreamDiag,
  kStreamInit,
  kStreamRowFix,
};

std::uint64_t class_seed(ProblemClass cls, std::uint64_t seed) {
  return splitmix64(seed ^ (static_cast<std::uint64_t>(cls) + 1) * 0x100000001b3ULL);
}

void require_positive(Index value, const char* what) {
  if (value < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

Index default_rows(const GenOptions& opt, Index fallback) {
  if (opt.rows) {
    if (*opt.rows < 0) throw std::invalid_argument("rows must be >= 0");
    return *opt.rows;
  }
  return fallback;
}

class TripletBuilder {
 public:
  void add(Index r, Index c, double v) {
    rows_.push_back(r);
    cols_.push_back(c);
    vals_.push_back(v);
  }
  void add_block(const Triplets& t, Index row_off, Index col_off, double scale = 1.0) {
    for (std::size_t k = 0; k < t.vals.size(); ++k) {
      add(t.rows[k] + row_off, t.cols[k] + col_off, scale * t.vals[k]);
    }
  }
  void add_diagonal(Index start_row, Index start_col, Index count, double value) {
    for (Index i = 0; i < count; ++i) add(start_row + i, start_col + i, value);
  }
  CscMatrix build(Index nrows, Index ncols) const {
    return csc_from_triplets(rows_, cols_, vals_, nrows, ncols);
  }

 private:
  std::vector<Index> rows_;
  std::vector<Index> cols_;
  Vector vals_;
};

Index nonzero_count(Index rows, Index cols, double density) {
  const Index total = rows * cols;
  if (total == 0) return 0;
  const auto k = static_cast<Index>(std::llround(density * static_cast<double>(total)));
  return std::clamp<Index>(k, 1, total);
}

// Exactly round(density * rows * cols) positions, values N(mean, stddev),
// in column-major order.
Triplets sparse_normal(Rng& rng, Index rows, Index cols, double density,
                       double mean = 0.0, double stddev = 1.0) {
  Triplets t;
  const Index count = nonzero_count(rows, cols, density);
  const auto positions = sample_without_replacement(
      rng, static_cast<std::uint64_t>(rows * cols), static_cast<std::uint64_t>(count));
  t.rows.reserve(count);
  t.cols.reserve(count);
  t.vals.reserve(count);
  for (std::uint64_t p : positions) {
    t.cols.push_back(static_cast<Index>(p) / rows);
    t.rows.push_back(static_cast<Index>(p) % rows);
    t.vals.push_back(rng.normal(mean, stddev));
  }
  return t;
}

SparseMatrix to_eigen(const Triplets& t, Index rows, Index cols) {
  std::vector<Eigen::Triplet<double, Index>> entries;
  entries.reserve(t.vals.size());
  for (std::size_t k = 0; k < t.vals.size(); ++k) {
    entries.emplace_back(t.rows[k], t.cols[k], t.vals[k]);
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

// Upper triangle of M M' + alpha I for a sparse n x n M.
CscMatrix gram_plus_identity(const Triplets& M, Index n, double alpha) {
  const SparseMatrix m = to_eigen(M, n, n);
  SparseMatrix g = (m * SparseMatrix(m.transpose())).pruned();
  TripletBuilder b;
  for (Index j = 0; j < n; ++j) {
    bool has_diag = false;
    for (SparseMatrix::InnerIterator it(g, j); it; ++it) {
      if (it.row() > j) continue;
      double v = it.value();
      if (it.row() == j) {
        v += alpha;
        has_diag = true;
      }
      b.add(it.row(), j, v);
    }
    if (!has_diag) b.add(j, j, alpha);
  }
  return b.build(n, n);
}

Vector normal_vector(Rng& rng, Index n, double mean = 0.0, double stddev = 1.0) {
  Vector v(n);
  for (double& x : v) x = rng.normal(mean, stddev);
  return v;
}

DenseMatrix dense_map(std::span<const double> data, Index rows, Index cols) {
  return Eigen::Map<const DenseMatrix>(data.data(), rows, cols);
}

Vector dense_vec(const DenseMatrix& m) {
  return Vector(m.data(), m.data() + m.size());
}

}  // namespace

std::string_view to_string(ProblemClass cls) {
  switch (cls) {
    case ProblemClass::kRandomQp:
      return "random_qp";
    case ProblemClass::kEqQp:
      return "eq_qp";
    case ProblemClass::kOptimalControl:
      return "optimal_control";
    case ProblemClass::kPortfolio:
      return "portfolio";
    case ProblemClass::kLasso:
      return "lasso";
    case ProblemClass::kHuber:
      return "huber";
    case ProblemClass::kSvm:
      return "svm";
  }
  return "unknown";
}

const std::vector<ProblemClass>& all_problem_classes() {
  static const std::vector<ProblemClass> classes{
      ProblemClass::kRandomQp,  ProblemClass::kEqQp,  ProblemClass::kOptimalControl,
      ProblemClass::kPortfolio, ProblemClass::kLasso, ProblemClass::kHuber,
      ProblemClass::kSvm,
  };
  return classes;
}

std::optional<ProblemClass> problem_class_from_string(std::string_view name) {
  for (ProblemClass cls : all_problem_classes()) {
    if (to_string(cls) == name) return cls;
  }
  return std::nullopt;
}

ProblemData generate(const GenSpec& spec) {
  switch (spec.cls) {
    case ProblemClass::kRandomQp:
      return gen_random_qp(spec.dim, spec.seed, spec.options);
    case ProblemClass::kEqQp:
      return gen_eq_qp(spec.dim, spec.seed, spec.options);
    case ProblemClass::kOptimalControl:
      return gen_optimal_control(spec.dim, spec.seed, spec.options);
    case ProblemClass::kPortfolio:
      return gen_portfolio(spec.dim, spec.seed, spec.options);
    case ProblemClass::kLasso:
      return gen_lasso(spec.dim, spec.seed, spec.options);
    case ProblemClass::kHuber:
      return gen_huber(spec.dim, spec.seed, spec.options);
    case ProblemClass::kSvm:
      return gen_svm(spec.dim, spec.seed, spec.options);
  }
  throw std::invalid_argument("unknown problem class");
}

ProblemData gen_random_qp(Index n, std::uint64_t seed, const GenOptions& opt) {
  require_positive(n, "n");
  const Index m = default_rows(opt, 10 * n);
  const std::uint64_t s = class_seed(ProblemClass::kRandomQp, seed);
  Rng rng_m(s, kStreamM), rng_a(s, kStreamA), rng_q(s, kStreamQ), rng_b(s, kStreamBounds);

  ProblemData p;
  p.P = gram_plus_identity(sparse_normal(rng_m, n, n, kDensity), n, kRegularization);
  const Triplets a = sparse_normal(rng_a, m, n, kDensity);
  p.A = csc_from_triplets(a.rows, a.cols, a.vals, m, n);
  p.q = normal_vector(rng_q, n);
  p.l.resize(m);
  p.u.resize(m);
  for (Index i = 0; i < m; ++i) p.u[i] = rng_b.uniform();
  for (Index i = 0; i < m; ++i) p.l[i] = -rng_b.uniform();
  return p;
}

ProblemData gen_eq_qp(Index n, std::uint64_t seed, const GenOptions& opt) {
  require_positive(n, "n");
  const Index m = default_rows(opt, n / 2);
  const std::uint64_t s = class_seed(ProblemClass::kEqQp, seed);
  Rng rng_m(s, kStreamM), rng_a(s, kStreamA), rng_q(s, kStreamQ), rng_b(s, kStreamBounds),
      rng_fix(s, kStreamRowFix);

  ProblemData p;
  p.P = gram_plus_identity(sparse_normal(rng_m, n, n, kDensity), n, kRegularization);
  Triplets a = sparse_normal(rng_a, m, n, kDensity);
  // An empty row would pin 0 = b_i; give it one entry.
  std::vector<char> used(m, 0);
  for (Index r : a.rows) used[r] = 1;
  for (Index i = 0; i < m; ++i) {
    if (used[i]) continue;
    a.rows.push_back(i);
    a.cols.push_back(static_cast<Index>(rng_fix.below(static_cast<std::uint64_t>(n))));
    a.vals.push_back(rng_fix.normal());
  }
  p.A = csc_from_triplets(a.rows, a.cols, a.vals, m, n);
  p.q = normal_vector(rng_q, n);
  p.l = normal_vector(rng_b, m);
  p.u = p.l;
  return p;
}

double spectral_radius(std::span<const double> A, Index n) {
  if (n == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(dense_map(A, n, n)), false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double dare_residual(const LtiSystem& sys, std::span<const double> Xdata) {
  const DenseMatrix A = dense_map(sys.A, sys.nx, sys.nx);
  const DenseMatrix B = dense_map(sys.B, sys.nx, sys.nu);
  const DenseMatrix X = dense_map(Xdata, sys.nx, sys.nx);
  const Eigen::MatrixXd Q = Eigen::Map<const Eigen::VectorXd>(sys.q_diag.data(), sys.nx).asDiagonal();
  const Eigen::MatrixXd R = Eigen::Map<const Eigen::VectorXd>(sys.r_diag.data(), sys.nu).asDiagonal();
  const Eigen::MatrixXd BtXA = B.transpose() * X * A;
  const Eigen::MatrixXd S = R + B.transpose() * X * B;
  const Eigen::MatrixXd rhs =
      Q + A.transpose() * X * A - BtXA.transpose() * S.ldlt().solve(BtXA);
  return (rhs - X).cwiseAbs().maxCoeff();
}

DareResult solve_dare(const LtiSystem& sys, double tol, Index max_iter) {
  const Eigen::MatrixXd A = dense_map(sys.A, sys.nx, sys.nx);
  const Eigen::MatrixXd B = dense_map(sys.B, sys.nx, sys.nu);
  const Eigen::MatrixXd Q = Eigen::Map<const Eigen::VectorXd>(sys.q_diag.data(), sys.nx).asDiagonal();
  const Eigen::MatrixXd R = Eigen::Map<const Eigen::VectorXd>(sys.r_diag.data(), sys.nu).asDiagonal();

  DareResult result;
  Eigen::MatrixXd X = Q;
  for (Index k = 1; k <= max_iter; ++k) {
    const Eigen::MatrixXd BtXA = B.transpose() * X * A;
    const Eigen::MatrixXd S = R + B.transpose() * X * B;
    Eigen::MatrixXd next = Q + A.transpose() * X * A - BtXA.transpose() * S.ldlt().solve(BtXA);
    next = 0.5 * (next + next.transpose()).eval();
    const double change = (next - X).cwiseAbs().maxCoeff();
    X = std::move(next);
    result.iterations = k;
    if (change <= tol * std::max(1.0, X.cwiseAbs().maxCoeff())) {
      result.converged = true;
      break;
    }
  }
  result.X = dense_vec(DenseMatrix(X));
  result.residual = dare_residual(sys, result.X);
  return result;
}

LtiSystem make_lti_system(Index nx, std::uint64_t seed, Index horizon) {
  require_positive(nx, "nx");
  require_positive(horizon, "horizon");
  const std::uint64_t s = class_seed(ProblemClass::kOptimalControl, seed);
  Rng rng_a(s, kStreamA), rng_b(s, kStreamB), rng_cost(s, kStreamCost),
      rng_bounds(s, kStreamBounds), rng_init(s, kStreamInit);

  LtiSystem sys;
  sys.nx = nx;
  sys.nu = std::max<Index>(1, nx / 2);
  sys.horizon = horizon;
  sys.A.resize(nx * nx);
  for (Index i = 0; i < nx; ++i) {
    for (Index j = 0; j < nx; ++j) {
      sys.A[i * nx + j] = (i == j ? 1.0 : 0.0) + rng_a.normal(0.0, 0.1);
    }
  }
  const double radius = spectral_radius(sys.A, nx);
  if (radius >= 1.0) {
    for (double& v : sys.A) v *= 0.99 / radius;
  }
  sys.B = normal_vector(rng_b, nx * sys.nu);
  sys.q_diag.resize(nx);
  for (double& v : sys.q_diag) {
    const double value = rng_cost.uniform(0.0, 10.0);
    v = rng_cost.bernoulli(0.7) ? value : 0.0;
  }
  sys.r_diag.assign(sys.nu, 0.1);
  sys.x_bar.resize(nx);
  for (double& v : sys.x_bar) v = rng_bounds.uniform(1.0, 2.0);
  sys.u_bar.resize(sys.nu);
  for (double& v : sys.u_bar) v = rng_bounds.uniform(0.0, 0.1);
  sys.x_init.resize(nx);
  for (Index i = 0; i < nx; ++i) {
    sys.x_init[i] = rng_init.uniform(-0.5 * sys.x_bar[i], 0.5 * sys.x_bar[i]);
  }
  sys.QT = solve_dare(sys).X;
  return sys;
}

ProblemData optimal_control_qp(const LtiSystem& sys) {
  const Index nx = sys.nx;
  const Index nu = sys.nu;
  const Index T = sys.horizon;
  const Index n = nx * (T + 1) + nu * T;
  const Index u_off = nx * (T + 1);
  auto x_col = [&](Index t, Index i) { return t * nx + i; };
  auto u_col = [&](Index t, Index i) { return u_off + t * nu + i; };

  TripletBuilder pb;
  for (Index t = 0; t < T; ++t) {
    for (Index i = 0; i < nx; ++i) {
      if (sys.q_diag[i] != 0.0) pb.add(x_col(t, i), x_col(t, i), 2.0 * sys.q_diag[i]);
    }
  }
  for (Index j = 0; j < nx; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double v = sys.QT[i * nx + j];
      if (v != 0.0) pb.add(x_col(T, i), x_col(T, j), 2.0 * v);
    }
  }
  for (Index t = 0; t < T; ++t) {
    for (Index i = 0; i < nu; ++i) pb.add(u_col(t, i), u_col(t, i), 2.0 * sys.r_diag[i]);
  }

  // Rows: x_0 = x_init, x_{t+1} - A x_t - B u_t = 0, then state and input boxes.
  const Index m = 2 * nx * (T + 1) + nu * T;
  TripletBuilder ab;
  Vector l(m), u(m);
  Index row = 0;
  for (Index i = 0; i < nx; ++i, ++row) {
    ab.add(row, x_col(0, i), 1.0);
    l[row] = u[row] = sys.x_init[i];
  }
  for (Index t = 0; t < T; ++t) {
    for (Index i = 0; i < nx; ++i, ++row) {
      ab.add(row, x_col(t + 1, i), 1.0);
      for (Index j = 0; j < nx; ++j) {
        const double a = sys.A[i * nx + j];
        if (a != 0.0) ab.add(row, x_col(t, j), -a);
      }
      for (Index j = 0; j < nu; ++j) {
        const double b = sys.B[i * nu + j];
        if (b != 0.0) ab.add(row, u_col(t, j), -b);
      }
      l[row] = u[row] = 0.0;
    }
  }
  for (Index t = 0; t <= T; ++t) {
    for (Index i = 0; i < nx; ++i, ++row) {
      ab.add(row, x_col(t, i), 1.0);
      l[row] = -sys.x_bar[i];
      u[row] = sys.x_bar[i];
    }
  }
  for (Index t = 0; t < T; ++t) {
    for (Index i = 0; i < nu; ++i, ++row) {
      ab.add(row, u_col(t, i), 1.0);
      l[row] = -sys.u_bar[i];
      u[row] = sys.u_bar[i];
    }
  }

  ProblemData p;
  p.P = pb.build(n, n);
  p.q.assign(n, 0.0);
  p.A = ab.build(m, n);
  p.l = std::move(l);
  p.u = std::move(u);
  return p;
}

ProblemData gen_optimal_control(Index nx, std::uint64_t seed, const GenOptions& opt) {
  return optimal_control_qp(make_lti_system(nx, seed, opt.horizon.value_or(10)));
}

PortfolioData make_portfolio_data(Index k, std::uint64_t seed, const GenOptions& opt) {
  require_positive(k, "k");
  PortfolioData data;
  data.k = k;
  data.n = opt.assets.value_or(100 * k);
  require_positive(data.n, "assets");
  const std::uint64_t s = class_seed(ProblemClass::kPortfolio, seed);
  Rng rng_f(s, kStreamFactor), rng_d(s, kStreamDiag), rng_mu(s, kStreamQ);

  data.F = sparse_normal(rng_f, data.n, k, 0.5);
  data.d.resize(data.n);
  const double d_max = std::sqrt(static_cast<double>(k));
  for (double& v : data.d) v = rng_d.uniform(0.0, d_max);
  data.mu = normal_vector(rng_mu, data.n);
  return data;
}

ProblemData portfolio_qp(const PortfolioData& data) {
  const Index n = data.n;
  const Index k = data.k;
  TripletBuilder pb;
  for (Index i = 0; i < n; ++i) pb.add(i, i, 2.0 * data.d[i]);
  pb.add_diagonal(n, n, k, 2.0);

  // Rows: F'x - y = 0, 1'x = 1, x >= 0.
  const Index m = k + 1 + n;
  TripletBuilder ab;
  const Triplets& f = data.F;
  for (std::size_t e = 0; e < f.vals.size(); ++e) ab.add(f.cols[e], f.rows[e], f.vals[e]);
  ab.add_diagonal(0, n, k, -1.0);
  for (Index i = 0; i < n; ++i) ab.add(k, i, 1.0);
  ab.add_diagonal(k + 1, 0, n, 1.0);

  ProblemData p;
  p.P = pb.build(n + k, n + k);
  p.q.assign(n + k, 0.0);
  for (Index i = 0; i < n; ++i) p.q[i] = -data.mu[i] / data.gamma;
  p.A = ab.build(m, n + k);
  p.l.assign(m, 0.0);
  p.u.assign(m, 0.0);
  p.l[k] = p.u[k] = 1.0;
  for (Index i = k + 1; i < m; ++i) p.u[i] = kInf;
  return p;
}

ProblemData gen_portfolio(Index k, std::uint64_t seed, const GenOptions& opt) {
  return portfolio_qp(make_portfolio_data(k, seed, opt));
}

LassoData make_lasso_data(Index n, std::uint64_t seed, const GenOptions& opt) {
  require_positive(n, "n");
  const Index m = default_rows(opt, 100 * n);
  require_positive(m, "rows");
  const std::uint64_t s = class_seed(ProblemClass::kLasso, seed);
  Rng rng_a(s, kStreamA), rng_v(s, kStreamTruth), rng_e(s, kStreamNoise);

  LassoData data;
  const Triplets a = sparse_normal(rng_a, m, n, kDensity);
  data.A = csc_from_triplets(a.rows, a.cols, a.vals, m, n);
  Vector v(n);
  const double v_std = std::sqrt(1.0 / static_cast<double>(n));
  for (double& x : v) {
    const bool zero = rng_v.bernoulli(0.5);
    const double value = rng_v.normal(0.0, v_std);
    x = zero ? 0.0 : value;
  }
  data.b = spmv(data.A, v);
  for (double& x : data.b) {
    const double e = rng_e.normal();
    if (opt.noise) x += e;
  }
  data.lambda_max = inf_norm(spmv(data.A, data.b, SpmvMode::kTranspose));
  return data;
}

Vector lasso_cost(const LassoData& data, double lambda) {
  const Index n = data.A.ncols;
  const Index m = data.A.nrows;
  Vector q(2 * n + m, 0.0);
  std::fill(q.begin() + n + m, q.end(), lambda);
  return q;
}

ProblemData lasso_qp(const LassoData& data, double lambda) {
  const Index n = data.A.ncols;
  const Index m = data.A.nrows;
  const Index nv = 2 * n + m;
  const Index y_off = n;
  const Index t_off = n + m;

  TripletBuilder pb;
  pb.add_diagonal(y_off, y_off, m, 2.0);

  // Rows: A x - y = b, x - t <= 0, x + t >= 0.
  TripletBuilder ab;
  ab.add_block(to_triplets(data.A), 0, 0);
  ab.add_diagonal(0, y_off, m, -1.0);
  ab.add_diagonal(m, 0, n, 1.0);
  ab.add_diagonal(m, t_off, n, -1.0);
  ab.add_diagonal(m + n, 0, n, 1.0);
  ab.add_diagonal(m + n, t_off, n, 1.0);

  ProblemData p;
  p.P = pb.build(nv, nv);
  p.q = lasso_cost(data, lambda);
  p.A = ab.build(m + 2 * n, nv);
  p.l.assign(m + 2 * n, 0.0);
  p.u.assign(m + 2 * n, 0.0);
  std::copy(data.b.begin(), data.b.end(), p.l.begin());
  std::copy(data.b.begin(), data.b.end(), p.u.begin());
  std::fill(p.l.begin() + m, p.l.begin() + m + n, -kInf);
  std::fill(p.u.begin() + m + n, p.u.end(), kInf);
  return p;
}

ProblemData gen_lasso(Index n, std::uint64_t seed, const GenOptions& opt) {
  const LassoData data = make_lasso_data(n, seed, opt);
  return lasso_qp(data, opt.lambda.value_or(data.lambda_max / 5.0));
}

ProblemData gen_huber(Index n, std::uint64_t seed, const GenOptions& opt) {
  require_positive(n, "n");
  const Index m = default_rows(opt, 100 * n);
  require_positive(m, "rows");
  const std::uint64_t s = class_seed(ProblemClass::kHuber, seed);
  Rng rng_a(s, kStreamA), rng_v(s, kStreamTruth), rng_e(s, kStreamNoise);
  constexpr double M = 1.0;

  const Triplets a = sparse_normal(rng_a, m, n, kDensity);
  const CscMatrix data = csc_from_triplets(a.rows, a.cols, a.vals, m, n);
  const Vector v = normal_vector(rng_v, n, 0.0, std::sqrt(1.0 / static_cast<double>(n)));
  Vector b = spmv(data, v);
  for (double& x : b) {
    const bool outlier = rng_e.bernoulli(0.05);
    const double e = outlier ? rng_e.uniform(0.0, 10.0) : rng_e.normal(0.0, 0.5);
    if (opt.noise) x += e;
  }

  // Variables (x, u, r, s).
  const Index nv = n + 3 * m;
  const Index u_off = n;
  const Index r_off = n + m;
  const Index s_off = n + 2 * m;
  TripletBuilder pb;
  pb.add_diagonal(u_off, u_off, m, 2.0);

  // Rows: A x - u - r + s = b, r >= 0, s >= 0.
  TripletBuilder ab;
  ab.add_block(a, 0, 0);
  ab.add_diagonal(0, u_off, m, -1.0);
  ab.add_diagonal(0, r_off, m, -1.0);
  ab.add_diagonal(0, s_off, m, 1.0);
  ab.add_diagonal(m, r_off, m, 1.0);
  ab.add_diagonal(2 * m, s_off, m, 1.0);

  ProblemData p;
  p.P = pb.build(nv, nv);
  p.q.assign(nv, 0.0);
  std::fill(p.q.begin() + r_off, p.q.end(), 2.0 * M);
  p.A = ab.build(3 * m, nv);
  p.l.assign(3 * m, 0.0);
  p.u.assign(3 * m, kInf);
  std::copy(b.begin(), b.end(), p.l.begin());
  std::copy(b.begin(), b.end(), p.u.begin());
  return p;
}

ProblemData gen_svm(Index n, std::uint64_t seed, const GenOptions& opt) {
  require_positive(n, "n");
  const Index m = default_rows(opt, 100 * n);
  require_positive(m, "rows");
  const std::uint64_t s = class_seed(ProblemClass::kSvm, seed);
  Rng rng_a(s, kStreamA);
  const double lambda = opt.lambda.value_or(1.0);

  const Index m_pos = m / 2;
  const double shift = 1.0 / static_cast<double>(n);
  const double stddev = std::sqrt(shift);
  const Triplets top = sparse_normal(rng_a, m_pos, n, kDensity, shift, stddev);
  const Triplets bottom = sparse_normal(rng_a, m - m_pos, n, kDensity, -shift, stddev);

  // Variables (x, t). Rows: diag(b) A x - t <= -1, -t <= 0.
  const Index nv = n + m;
  TripletBuilder pb;
  pb.add_diagonal(0, 0, n, 2.0);
  TripletBuilder ab;
  ab.add_block(top, 0, 0, 1.0);
  ab.add_block(bottom, m_pos, 0, -1.0);
  ab.add_diagonal(0, n, m, -1.0);
  ab.add_diagonal(m, n, m, -1.0);

  ProblemData p;
  p.P = pb.build(nv, nv);
  p.q.assign(nv, 0.0);
  std::fill(p.q.begin() + n, p.q.end(), lambda);
  p.A = ab.build(2 * m, nv);
  p.l.assign(2 * m, -kInf);
  p.u.assign(2 * m, 0.0);
  std::fill(p.u.begin(), p.u.begin() + m, -1.0);
  return p;
}

}  // namespace qpsplit
