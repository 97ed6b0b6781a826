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

#include "qpsplit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qpsplit/probgen.hpp"
#include "qpsplit/qpio.hpp"
#include "qpsplit/random.hpp"

namespace qpsplit {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

bool is_success(Status s) {
  return s == Status::kSolved || s == Status::kSolvedInaccurate;
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct TimedResult {
  SolveResult result;
  double seconds = 0.0;
};

TimedResult timed_solve(Solver& solver) {
  const auto start = Clock::now();
  TimedResult t;
  t.result = solver.solve();
  t.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return t;
}

Vector log_space(double hi, double lo, Index count) {
  Vector out(count);
  if (count == 1) {
    out[0] = hi;
    return out;
  }
  const double a = std::log10(hi);
  const double b = std::log10(lo);
  for (Index k = 0; k < count; ++k) {
    out[k] = std::pow(10.0, a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  return out;
}

}  // namespace

double shifted_geometric_mean(std::span<const double> times, double shift) {
  if (times.empty()) throw std::invalid_argument("shifted geometric mean of no values");
  double log_sum = 0.0;
  for (double t : times) {
    if (!(t >= 0.0)) throw std::invalid_argument("times must be nonnegative");
    log_sum += std::log(t + shift);
  }
  return std::exp(log_sum / static_cast<double>(times.size())) - shift;
}

std::vector<double> normalized_ratios(std::span<const double> means) {
  if (means.empty()) return {};
  const double best = *std::min_element(means.begin(), means.end());
  if (!(best > 0.0)) throw std::invalid_argument("means must be positive");
  std::vector<double> out;
  out.reserve(means.size());
  for (double g : means) out.push_back(g / best);
  return out;
}

ExternalCheck external_optimality_check(const ProblemData& problem,
                                        std::span<const double> x,
                                        std::span<const double> y,
                                        std::span<const double> z, double eps_abs,
                                        double eps_rel) {
  ExternalCheck c;
  if (static_cast<Index>(x.size()) != problem.n() ||
      static_cast<Index>(y.size()) != problem.m() ||
      (!z.empty() && static_cast<Index>(z.size()) != problem.m())) {
    return c;
  }
  const Vector ax = spmv(problem.A, x);
  double ax_norm = inf_norm(ax);
  double z_norm = 0.0;
  for (Index i = 0; i < problem.m(); ++i) {
    const double lo = canonical_bound(problem.l[i]);
    const double hi = canonical_bound(problem.u[i]);
    const double over = std::max(ax[i] - hi, 0.0) + std::min(ax[i] - lo, 0.0);
    c.prim_violation = std::max(c.prim_violation, std::abs(over));
    const double zi = z.empty() ? std::clamp(ax[i], lo, hi) : z[i];
    z_norm = std::max(z_norm, std::abs(zi));
  }
  const Vector px = spmv(problem.P, x, SpmvMode::kSymmetricUpper);
  const Vector aty = spmv(problem.A, y, SpmvMode::kTranspose);
  for (Index j = 0; j < problem.n(); ++j) {
    c.dual_residual = std::max(c.dual_residual, std::abs(px[j] + problem.q[j] + aty[j]));
  }
  c.eps_prim = eps_abs + eps_rel * std::max(ax_norm, z_norm);
  c.eps_dual = eps_abs + eps_rel * std::max({inf_norm(px), inf_norm(aty), inf_norm(problem.q)});
  c.primal_ok = std::isfinite(c.prim_violation) && c.prim_violation <= c.eps_prim;
  c.dual_ok = std::isfinite(c.dual_residual) && c.dual_residual <= c.eps_dual;
  return c;
}

ExternalCheck external_optimality_check(const ProblemData& problem,
                                        const SolveResult& result, double eps_abs,
                                        double eps_rel) {
  return external_optimality_check(problem, result.x, result.y, result.z, eps_abs, eps_rel);
}

BenchRecord bench_instance(const std::string& name, const std::string& cls,
                           const ProblemData& problem, const BenchOptions& options) {
  BenchRecord rec;
  rec.name = name;
  rec.cls = cls;
  rec.n = problem.n();
  rec.m = problem.m();
  rec.nnz = problem.P.nnz() + problem.A.nnz();

  std::vector<double> totals, setups, solves, polishes;
  SolveResult last;
  const Index min_runs = std::max<Index>(1, options.repeat);
  for (Index run = 0;; ++run) {
    Solver solver(problem, options.settings);
    last = solver.solve();
    totals.push_back(last.timings.total());
    setups.push_back(last.timings.setup);
    solves.push_back(last.timings.solve);
    polishes.push_back(last.timings.polish);
    const Index wanted = median(totals) < options.short_time
                             ? std::max(min_runs, options.short_repeat)
                             : min_runs;
    if (run + 1 >= wanted) break;
  }

  rec.status = last.status;
  rec.iterations = last.iterations;
  rec.rho_updates = last.rho_updates;
  rec.polish_succeeded = last.polish_succeeded();
  rec.setup = median(setups);
  rec.solve = median(solves);
  rec.polish = median(polishes);
  rec.check_passed = is_success(last.status) &&
                     external_optimality_check(problem, last, options.settings.eps_abs,
                                               options.settings.eps_rel)
                         .passed();
  rec.failed = !rec.check_passed;
  rec.time = rec.failed ? options.failure_time : median(totals);
  return rec;
}

std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<BenchRecord> bench_corpus(const std::filesystem::path& dir,
                                      const BenchOptions& options) {
  std::vector<BenchRecord> records;
  for (const auto& path : list_corpus(dir)) {
    const QpFile file = read_qp_file(path);
    std::string cls = "unknown";
    if (file.metadata && !file.metadata->cls.empty()) cls = file.metadata->cls;
    records.push_back(bench_instance(path.stem().string(), cls, file.problem, options));
  }
  return records;
}

std::vector<ClassSummary> summarize(const std::vector<BenchRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) {
    if (!groups.count(r.cls)) order.push_back(r.cls);
    groups[r.cls].push_back(&r);
  }
  auto build = [](const std::string& cls, const std::vector<const BenchRecord*>& group) {
    ClassSummary s;
    s.cls = cls;
    s.instances = static_cast<Index>(group.size());
    std::vector<double> times, setup, solve, polish, iters, rho;
    Index polished = 0;
    for (const BenchRecord* r : group) {
      if (r->failed) ++s.failures;
      if (r->polish_succeeded) ++polished;
      times.push_back(r->time);
      setup.push_back(r->setup);
      solve.push_back(r->solve);
      polish.push_back(r->polish);
      iters.push_back(static_cast<double>(r->iterations));
      rho.push_back(static_cast<double>(r->rho_updates));
    }
    if (!times.empty()) {
      s.sgm_time = shifted_geometric_mean(times);
      s.max_iterations = *std::max_element(iters.begin(), iters.end());
      s.max_rho_updates = *std::max_element(rho.begin(), rho.end());
      s.polish_success_rate = static_cast<double>(polished) / static_cast<double>(group.size());
    }
    s.median_time = median(times);
    s.median_setup = median(setup);
    s.median_solve = median(solve);
    s.median_polish = median(polish);
    s.median_iterations = median(iters);
    s.median_rho_updates = median(rho);
    return s;
  };
  std::vector<ClassSummary> rows;
  std::vector<const BenchRecord*> all;
  for (const auto& cls : order) {
    rows.push_back(build(cls, groups[cls]));
    all.insert(all.end(), groups[cls].begin(), groups[cls].end());
  }
  if (!all.empty()) rows.push_back(build("all", all));
  return rows;
}

std::string records_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "name,class,n,m,nnz,status,check_passed,failed,time,setup,solve,polish,"
         "iterations,polish_succeeded,rho_updates\n";
  for (const auto& r : records) {
    out << r.name << ',' << r.cls << ',' << r.n << ',' << r.m << ',' << r.nnz << ','
        << to_string(r.status) << ',' << r.check_passed << ',' << r.failed << ','
        << sci(r.time) << ',' << sci(r.setup) << ',' << sci(r.solve) << ','
        << sci(r.polish) << ',' << r.iterations << ',' << r.polish_succeeded << ','
        << r.rho_updates << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<ClassSummary>& rows) {
  std::ostringstream out;
  out << "class,instances,failures,sgm_time,median_time,median_setup,median_solve,"
         "median_polish,median_iterations,max_iterations,polish_success_rate,"
         "median_rho_updates,max_rho_updates\n";
  for (const auto& s : rows) {
    out << s.cls << ',' << s.instances << ',' << s.failures << ',' << sci(s.sgm_time) << ','
        << sci(s.median_time) << ',' << sci(s.median_setup) << ',' << sci(s.median_solve)
        << ',' << sci(s.median_polish) << ',' << s.median_iterations << ','
        << s.max_iterations << ',' << fixed(s.polish_success_rate, 3) << ','
        << s.median_rho_updates << ',' << s.max_rho_updates << '\n';
  }
  return out.str();
}

std::string summary_table(const std::vector<ClassSummary>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %5s %5s %11s %11s %11s %11s %11s %8s %8s %7s %5s %5s\n",
                "class", "N", "fail", "sgm[s]", "median[s]", "setup[s]", "solve[s]",
                "polish[s]", "iter", "iter_max", "polish", "rho", "rho_mx");
  out << line;
  for (const auto& s : rows) {
    std::snprintf(line, sizeof line,
                  "%-16s %5lld %5lld %11.3e %11.3e %11.3e %11.3e %11.3e %8.1f %8.0f %6.1f%% %5.1f %5.0f\n",
                  s.cls.c_str(), static_cast<long long>(s.instances),
                  static_cast<long long>(s.failures), s.sgm_time, s.median_time,
                  s.median_setup, s.median_solve, s.median_polish, s.median_iterations,
                  s.max_iterations, 100.0 * s.polish_success_rate, s.median_rho_updates,
                  s.max_rho_updates);
    out << line;
  }
  return out.str();
}

double ParametricReport::iteration_ratio() const {
  return warm_iterations > 0
             ? static_cast<double>(cold_iterations) / static_cast<double>(warm_iterations)
             : 0.0;
}

double ParametricReport::time_ratio() const {
  return warm_time > 0.0 ? cold_time / warm_time : 0.0;
}

namespace {

// Bookkeeping shared by the parametric experiments.
class WarmTracker {
 public:
  explicit WarmTracker(ParametricReport& report) : report_(report) {}

  SolveResult solve(Solver& solver, bool matrix_update) {
    const Index numeric_before = solver.numeric_factorizations();
    const Index symbolic_before = solver.symbolic_factorizations();
    TimedResult t = timed_solve(solver);
    report_.warm_time += t.seconds;
    report_.warm_iterations += t.result.iterations;
    report_.warm_rho_updates += t.result.rho_updates;
    report_.numeric_from_rho += t.result.rho_updates;
    report_.numeric_factorizations += solver.numeric_factorizations() - numeric_before;
    report_.symbolic_factorizations += solver.symbolic_factorizations() - symbolic_before;
    if (matrix_update) ++report_.numeric_from_matrix_updates;
    if (t.result.status != Status::kSolved) ++report_.failures;
    ++report_.solves;
    return std::move(t.result);
  }

  // Factorizations performed by an update call before a solve.
  void count_update(Solver& solver, Index numeric_before, Index symbolic_before) {
    report_.numeric_factorizations += solver.numeric_factorizations() - numeric_before;
    report_.symbolic_factorizations += solver.symbolic_factorizations() - symbolic_before;
  }

  void cold(const ProblemData& problem, const Settings& settings) {
    const auto start = Clock::now();
    Solver solver(problem, settings);
    const SolveResult r = solver.solve();
    report_.cold_time += std::chrono::duration<double>(Clock::now() - start).count();
    report_.cold_iterations += r.iterations;
    if (r.status != Status::kSolved) ++report_.failures;
  }

 private:
  ParametricReport& report_;
};

}  // namespace

ParametricReport run_lasso_path(Index n, std::uint64_t seed, Index count,
                                const Settings& settings, std::optional<Index> rows) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  GenOptions opt;
  opt.rows = rows;
  const LassoData data = make_lasso_data(n, seed, opt);
  const Vector lambdas = log_space(data.lambda_max, 0.01 * data.lambda_max, count);

  ParametricReport report;
  report.name = "lasso n=" + std::to_string(n);
  WarmTracker track(report);

  const auto setup_start = Clock::now();
  Solver warm(lasso_qp(data, lambdas[0]), settings);
  report.warm_time += std::chrono::duration<double>(Clock::now() - setup_start).count();
  for (Index k = 0; k < count; ++k) {
    if (k > 0) {
      const Vector q = lasso_cost(data, lambdas[k]);
      const auto start = Clock::now();
      const Index nb = warm.numeric_factorizations();
      const Index sb = warm.symbolic_factorizations();
      warm.update_vectors(std::span<const double>(q), std::nullopt, std::nullopt);
      track.count_update(warm, nb, sb);
      report.warm_time += std::chrono::duration<double>(Clock::now() - start).count();
    }
    track.solve(warm, false);
    track.cold(lasso_qp(data, lambdas[k]), settings);
  }
  return report;
}

ParametricReport run_mpc_simulation(Index nx, std::uint64_t seed, Index steps,
                                    const Settings& settings) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  LtiSystem sys = make_lti_system(nx, seed);
  ProblemData problem = optimal_control_qp(sys);
  const Index u_off = nx * (sys.horizon + 1);

  ParametricReport report;
  report.name = "mpc nx=" + std::to_string(nx);
  WarmTracker track(report);

  const auto setup_start = Clock::now();
  Solver warm(problem, settings);
  report.warm_time += std::chrono::duration<double>(Clock::now() - setup_start).count();
  Vector state = sys.x_init;
  for (Index step = 0; step < steps; ++step) {
    if (step > 0) {
      for (Index i = 0; i < nx; ++i) problem.l[i] = problem.u[i] = state[i];
      const auto start = Clock::now();
      const Index nb = warm.numeric_factorizations();
      const Index sb = warm.symbolic_factorizations();
      warm.update_vectors(std::nullopt, std::span<const double>(problem.l),
                          std::span<const double>(problem.u));
      track.count_update(warm, nb, sb);
      report.warm_time += std::chrono::duration<double>(Clock::now() - start).count();
    }
    const SolveResult r = track.solve(warm, false);
    track.cold(problem, settings);

    // Apply the first input (zero if the solve failed) and propagate.
    Vector next(nx, 0.0);
    for (Index i = 0; i < nx; ++i) {
      for (Index j = 0; j < nx; ++j) next[i] += sys.A[i * nx + j] * state[j];
      for (Index j = 0; j < sys.nu; ++j) {
        const double u = r.x.empty() ? 0.0 : r.x[u_off + j];
        next[i] += sys.B[i * sys.nu + j] * u;
      }
      next[i] = std::clamp(next[i], -sys.x_bar[i], sys.x_bar[i]);
    }
    state = std::move(next);
  }
  return report;
}

ParametricReport run_portfolio_backtest(Index k, std::uint64_t seed, Index months,
                                        Index days_per_month, const Settings& settings,
                                        std::optional<Index> assets) {
  if (months < 1 || days_per_month < 1) throw std::invalid_argument("empty back test");
  GenOptions opt;
  opt.assets = assets;
  PortfolioData data = make_portfolio_data(k, seed, opt);
  Rng rng(seed, 0x5eed);
  const double f_std = std::sqrt(0.1);
  const double d_max = 0.1 * std::sqrt(static_cast<double>(k));

  ParametricReport report;
  report.name = "portfolio k=" + std::to_string(k);
  WarmTracker track(report);

  ProblemData problem = portfolio_qp(data);
  const auto setup_start = Clock::now();
  Solver warm(problem, settings);
  report.warm_time += std::chrono::duration<double>(Clock::now() - setup_start).count();

  for (Index month = 0; month < months; ++month) {
    for (Index day = 0; day < days_per_month; ++day) {
      bool matrix_update = false;
      if (month > 0 || day > 0) {
        for (double& mu : data.mu) mu = 0.9 * mu + rng.normal(0.0, f_std);
        if (day == 0) {
          for (double& d : data.d) d = 0.9 * d + rng.uniform(0.0, d_max);
          for (double& f : data.F.vals) f = 0.9 * f + rng.normal(0.0, f_std);
          matrix_update = true;
        }
        problem = portfolio_qp(data);
        const auto start = Clock::now();
        const Index nb = warm.numeric_factorizations();
        const Index sb = warm.symbolic_factorizations();
        if (matrix_update) {
          warm.update_matrices(std::span<const double>(problem.P.values),
                               std::span<const double>(problem.A.values));
        }
        warm.update_vectors(std::span<const double>(problem.q), std::nullopt, std::nullopt);
        track.count_update(warm, nb, sb);
        report.warm_time += std::chrono::duration<double>(Clock::now() - start).count();
      }
      track.solve(warm, matrix_update);
      track.cold(problem, settings);
    }
  }
  return report;
}

std::string parametric_table(const std::vector<ParametricReport>& reports) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %6s %10s %10s %7s %11s %11s %7s %6s %6s %6s %5s\n",
                "problem", "solves", "iter_cold", "iter_warm", "ratio", "time_cold",
                "time_warm", "ratio", "num_f", "rho_f", "sym_f", "fail");
  out << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line,
                  "%-18s %6lld %10lld %10lld %7.2f %11.3e %11.3e %7.2f %6lld %6lld %6lld %5lld\n",
                  r.name.c_str(), static_cast<long long>(r.solves),
                  static_cast<long long>(r.cold_iterations),
                  static_cast<long long>(r.warm_iterations), r.iteration_ratio(),
                  r.cold_time, r.warm_time, r.time_ratio(),
                  static_cast<long long>(r.numeric_factorizations),
                  static_cast<long long>(r.numeric_from_rho),
                  static_cast<long long>(r.symbolic_factorizations),
                  static_cast<long long>(r.failures));
    out << line;
  }
  return out.str();
}

}  // namespace qpsplit
