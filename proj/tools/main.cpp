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

// qpsplit command-line front end: solve, generate, bench, check.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "qpsplit/bench.hpp"
#include "qpsplit/probgen.hpp"
#include "qpsplit/qpio.hpp"
#include "qpsplit/solver.hpp"
#include "sweep.hpp"

namespace fs = std::filesystem;
using namespace qpsplit;

namespace {

enum ExitCode : int {
  kOk = 0,
  kNumerical = 1,
  kIoError = 2,
  kNotConverged = 3,
  kCheckFailed = 4,
};

void add_settings_flags(CLI::App* app, Settings& s) {
  app->add_option("--rho", s.rho, "Initial ADMM step size");
  app->add_option("--sigma", s.sigma, "Primal regularization");
  app->add_option("--alpha", s.alpha, "Relaxation parameter in (0, 2)");
  app->add_option("--eps-abs", s.eps_abs, "Absolute tolerance");
  app->add_option("--eps-rel", s.eps_rel, "Relative tolerance");
  app->add_option("--eps-prim-inf", s.eps_prim_inf, "Primal infeasibility tolerance");
  app->add_option("--eps-dual-inf", s.eps_dual_inf, "Dual infeasibility tolerance");
  app->add_option("--max-iter", s.max_iter, "Iteration limit");
  app->add_option("--time-limit", s.time_limit, "Time limit in seconds (0 = none)");
  app->add_option("--check-termination", s.check_termination,
                  "Iterations between termination checks");
  app->add_option("--scaling-iters", s.scaling_iters, "Equilibration passes (0 = off)");
  app->add_option("--scaling-eps", s.scaling_eps, "Equilibration tolerance");
  app->add_flag("--adaptive-rho,!--no-adaptive-rho", s.adaptive_rho, "Adapt rho");
  app->add_option("--adaptive-rho-fraction", s.adaptive_rho_fraction,
                  "Work since factorization, relative to the factorization, before rho may change");
  app->add_option("--adaptive-rho-tolerance", s.adaptive_rho_tolerance,
                  "Minimum ratio between new and old rho");
  app->add_option("--adaptive-rho-max-updates", s.adaptive_rho_max_updates,
                  "Maximum rho updates per solve");
  app->add_flag("--adaptive-rho-wall-clock", s.adaptive_rho_wall_clock,
                "Gate rho updates on measured time instead of the flop model");
  app->add_option("--rho-min", s.rho_min, "Lower clamp for rho");
  app->add_option("--rho-max", s.rho_max, "Upper clamp for rho");
  app->add_option("--rho-eq-scale", s.rho_eq_scale, "rho multiplier for equality rows");
  app->add_flag("--polish,!--no-polish", s.polish, "Polish the solution");
  app->add_option("--delta", s.delta, "Polishing regularization");
  app->add_option("--polish-refine-iter", s.polish_refine_iter,
                  "Iterative refinement steps in polishing");
  std::map<std::string, LinsysBackend> backends{{"direct", LinsysBackend::kDirect},
                                                {"indirect", LinsysBackend::kIndirect}};
  app->add_option("--linsys-backend", s.linsys_backend, "direct or indirect")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  std::map<std::string, Ordering> orderings{{"amd", Ordering::kAmd},
                                            {"natural", Ordering::kNatural}};
  app->add_option("--ordering", s.ordering, "Fill-reducing ordering: amd or natural")
      ->transform(CLI::CheckedTransformer(orderings, CLI::ignore_case));
  app->add_option("--cg-tol", s.cg_tol, "Relative tolerance of the indirect solver");
  app->add_option("--cg-max-iter", s.cg_max_iter, "Iteration cap of the indirect solver");
}

int exit_code_for(Status status) {
  switch (status) {
    case Status::kSolved:
    case Status::kSolvedInaccurate:
    case Status::kPrimalInfeasible:
    case Status::kDualInfeasible:
      return kOk;
    case Status::kNumericalError:
    case Status::kUnsolved:
      return kNumerical;
    case Status::kMaxIterReached:
    case Status::kTimeLimitReached:
      return kNotConverged;
  }
  return kNumerical;
}

struct SolveArgs {
  std::string input;
  std::string output;
  Settings settings;
};

int run_solve(const SolveArgs& args) {
  ProblemData problem;
  try {
    problem = read_qp(args.input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  Solver solver(std::move(problem), args.settings);
  const SolveResult result = solver.solve();
  const std::string json = result_to_json(result);
  std::cout << json;
  if (!args.output.empty()) {
    try {
      write_text_file(args.output, json);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kIoError;
    }
  }
  return exit_code_for(result.status);
}

struct GenerateArgs {
  std::string classes = "all";
  std::string dims;
  std::string seeds = "0";
  std::string out_dir;
  std::string output;
  std::optional<Index> rows;
  std::optional<Index> horizon;
  std::optional<Index> assets;
  std::optional<double> lambda;
  bool no_noise = false;
};

int run_generate(const GenerateArgs& args) {
  std::vector<GenSpec> specs;
  GenOptions options;
  options.rows = args.rows;
  options.horizon = args.horizon;
  options.assets = args.assets;
  options.lambda = args.lambda;
  options.noise = !args.no_noise;
  for (ProblemClass cls : cli::parse_class_list(args.classes)) {
    for (std::int64_t dim : cli::parse_int_list(args.dims)) {
      for (std::int64_t seed : cli::parse_int_list(args.seeds)) {
        if (seed < 0) throw std::invalid_argument("seeds must be nonnegative");
        specs.push_back({cls, dim, static_cast<std::uint64_t>(seed), options});
      }
    }
  }
  if (!args.output.empty()) {
    if (specs.size() != 1) {
      throw std::invalid_argument("--output needs exactly one instance; use --out-dir for sweeps");
    }
    write_qp(generate(specs[0]), args.output, metadata_for(specs[0], cli::instance_name(specs[0])));
    return kOk;
  }
  if (args.out_dir.empty()) throw std::invalid_argument("one of --out-dir or --output is required");
  fs::create_directories(args.out_dir);
  for (const GenSpec& spec : specs) {
    const std::string name = cli::instance_name(spec);
    write_qp(generate(spec), fs::path(args.out_dir) / (name + ".json"), metadata_for(spec, name));
  }
  std::cerr << "wrote " << specs.size() << " files to " << args.out_dir << '\n';
  return kOk;
}

struct BenchArgs {
  std::string corpus;
  BenchOptions options;
  std::string records_csv;
  std::string summary_csv;
  bool warm_start = false;
  std::string lasso_dims = "50";
  std::string mpc_dims = "10";
  std::string portfolio_dims = "5";
  Index lambdas = 100;
  Index steps = 100;
  Index months = 12;
  Index days = 20;
  std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& args) {
  if (args.corpus.empty() && !args.warm_start) {
    throw std::invalid_argument("give a corpus directory and/or --warm-start");
  }
  if (!args.corpus.empty()) {
    const auto records = bench_corpus(args.corpus, args.options);
    const auto rows = summarize(records);
    std::cout << summary_table(rows);
    if (!args.records_csv.empty()) write_text_file(args.records_csv, records_csv(records));
    if (!args.summary_csv.empty()) write_text_file(args.summary_csv, summary_csv(rows));
  }
  if (args.warm_start) {
    std::vector<ParametricReport> reports;
    const Settings& s = args.options.settings;
    for (auto n : cli::parse_int_list(args.lasso_dims)) {
      if (n > 0) reports.push_back(run_lasso_path(n, args.seed, args.lambdas, s));
    }
    for (auto nx : cli::parse_int_list(args.mpc_dims)) {
      if (nx > 0) reports.push_back(run_mpc_simulation(nx, args.seed, args.steps, s));
    }
    for (auto k : cli::parse_int_list(args.portfolio_dims)) {
      if (k > 0) {
        reports.push_back(run_portfolio_backtest(k, args.seed, args.months, args.days, s, 10 * k));
      }
    }
    if (!args.corpus.empty()) std::cout << '\n';
    std::cout << parametric_table(reports);
  }
  return kOk;
}

struct CheckArgs {
  std::string problem;
  std::string result;
  double eps_abs = 1e-3;
  double eps_rel = 1e-3;
};

int run_check(const CheckArgs& args) {
  ProblemData problem;
  SolveResult result;
  try {
    problem = read_qp(args.problem);
    result = read_result(args.result);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  const ExternalCheck c = external_optimality_check(problem, result, args.eps_abs, args.eps_rel);
  std::printf("primal violation %.3e (limit %.3e) %s\n", c.prim_violation, c.eps_prim,
              c.primal_ok ? "ok" : "FAIL");
  std::printf("dual residual    %.3e (limit %.3e) %s\n", c.dual_residual, c.eps_dual,
              c.dual_ok ? "ok" : "FAIL");
  return c.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qpsplit: ADMM solver for convex quadratic programs"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a problem file and print the result as JSON");
  solve->add_option("input", solve_args.input, "Problem file")->required();
  solve->add_option("-o,--output", solve_args.output, "Also write the result to this file");
  add_settings_flags(solve, solve_args.settings);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Write generated problem instances");
  gen->add_option("-c,--class", gen_args.classes, "Class name, comma list or 'all'");
  gen->add_option("-d,--dim", gen_args.dims, "Leading dimension(s): 10 | 10,20 | 10:50:10")
      ->required();
  gen->add_option("-s,--seed", gen_args.seeds, "Seed(s), same syntax as --dim");
  gen->add_option("--out-dir", gen_args.out_dir, "Directory for a sweep");
  gen->add_option("-o,--output", gen_args.output, "File for a single instance");
  gen->add_option("--rows", gen_args.rows, "Override the row count m");
  gen->add_option("--horizon", gen_args.horizon, "Optimal control horizon");
  gen->add_option("--assets", gen_args.assets, "Portfolio asset count");
  gen->add_option("--lambda", gen_args.lambda, "Lasso / SVM weight");
  gen->add_flag("--no-noise", gen_args.no_noise, "Drop measurement noise (lasso, huber)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Benchmark a corpus and/or parametric sequences");
  bench->add_option("corpus", bench_args.corpus, "Directory of problem files");
  add_settings_flags(bench, bench_args.options.settings);
  bench->add_option("--repeat", bench_args.options.repeat, "Minimum runs per instance");
  bench->add_option("--failure-time", bench_args.options.failure_time,
                    "Seconds charged to a failed instance");
  bench->add_option("--records-csv", bench_args.records_csv, "Per-instance CSV output");
  bench->add_option("--summary-csv", bench_args.summary_csv, "Per-class CSV output");
  bench->add_flag("--warm-start", bench_args.warm_start,
                  "Run the warm start / factorization caching experiments");
  bench->add_option("--lasso-n", bench_args.lasso_dims, "Lasso feature counts (0 skips)");
  bench->add_option("--mpc-nx", bench_args.mpc_dims, "MPC state dimensions (0 skips)");
  bench->add_option("--portfolio-k", bench_args.portfolio_dims, "Portfolio factor counts (0 skips)");
  bench->add_option("--lambdas", bench_args.lambdas, "Points on the lasso path");
  bench->add_option("--steps", bench_args.steps, "MPC simulation steps");
  bench->add_option("--months", bench_args.months, "Portfolio back test months");
  bench->add_option("--days", bench_args.days, "Trading days per month");
  bench->add_option("--seed", bench_args.seed, "Seed for the parametric experiments");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Validate a result file against a problem file");
  check->add_option("problem", check_args.problem, "Problem file")->required();
  check->add_option("result", check_args.result, "Result file")->required();
  check->add_option("--eps-abs", check_args.eps_abs, "Absolute tolerance");
  check->add_option("--eps-rel", check_args.eps_rel, "Relative tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      solve_args.settings.validate();
      return run_solve(solve_args);
    }
    if (*gen) return run_generate(gen_args);
    if (*bench) {
      bench_args.options.settings.validate();
      return run_bench(bench_args);
    }
    if (*check) return run_check(check_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kOk;
}
