#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "raopt/checks.hpp"
#include "raopt/csv.hpp"
#include "raopt/experiments.hpp"
#include "raopt/problems.hpp"
#include "raopt/retrospective.hpp"

namespace {

struct ProblemFlags {
  raopt::ProblemSpec spec;

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--problem", spec.kind,
                                "Problem kind: poisson1d, poisson-multi, heavy, "
                                "mean-point, mean-normal");
    if (required) opt->required();
    cmd->add_option("--d", spec.d, "Dimension of theta (poisson-multi)")
        ->capture_default_str();
    cmd->add_option("--astar-seed", spec.a_star_seed,
                    "Seed for the poisson-multi coefficient draw")
        ->capture_default_str();
    cmd->add_option("--nu", spec.nu, "Student-t degrees of freedom (heavy)")
        ->capture_default_str();
    cmd->add_option("--mean-value", spec.mean_value,
                    "Point-mass value / normal mean (mean-*)")
        ->capture_default_str();
    cmd->add_option("--mean-sigma", spec.mean_sigma, "Normal sigma (mean-normal)")
        ->capture_default_str();
  }
};

struct RaFlags {
  raopt::RaConfig cfg;
  double theta0_fill = 1.0;
  std::vector<double> theta0_explicit;

  void attach(CLI::App* cmd) {
    cmd->add_option("--budget", cfg.budget, "Total computational budget B")
        ->capture_default_str();
    cmd->add_option("--alpha", cfg.alpha_prime, "Assumed noise exponent alpha' in (0,1]")
        ->capture_default_str();
    cmd->add_option("--delta", cfg.delta, "Stage geometry parameter in [0,1)")
        ->capture_default_str();
    cmd->add_option("--max-stages", cfg.max_stages, "Maximum number of stages J")
        ->capture_default_str();
    cmd->add_option("--kappa", cfg.kappa, "Stage sample-size scale")
        ->capture_default_str();
    cmd->add_option("--tau", cfg.tau, "Stage tolerance scale")->capture_default_str();
    cmd->add_option("--beta", cfg.beta, "Backtracking shrink factor in (0,1)")
        ->capture_default_str();
    cmd->add_option("--min-n", cfg.min_n, "Floor on stage sample sizes (0 disables)")
        ->capture_default_str();
    cmd->add_option("--c-eval", cfg.cost_eval, "Unit cost of one f evaluation")
        ->capture_default_str();
    cmd->add_option("--c-grad", cfg.cost_grad, "Unit cost of one grad evaluation")
        ->capture_default_str();
    cmd->add_flag("--final-stage-tau-zero", cfg.final_stage_tau_zero,
                  "Run stage J with tolerance 0 (trades away early-exit equivalence)");
    cmd->add_option("--theta0", theta0_fill,
                    "Starting value, broadcast to every coordinate")
        ->capture_default_str();
    cmd->add_option("--theta0-vec", theta0_explicit,
                    "Explicit starting vector (overrides --theta0)");
  }

  raopt::RaConfig resolve(const raopt::NoisyProblem& problem) const {
    raopt::RaConfig out = cfg;
    if (!theta0_explicit.empty()) {
      out.theta0 = theta0_explicit;
    } else {
      out.theta0.assign(problem.dim, theta0_fill);
    }
    return out;
  }
};

void warn_if_outside_guarantee(const raopt::RaConfig& cfg) {
  if (!raopt::delta_in_guarantee_range(cfg.delta, cfg.alpha_prime)) {
    const double lower = 2.0 * cfg.alpha_prime / (1.0 + 3.0 * cfg.alpha_prime);
    std::fprintf(stderr,
                 "warning: delta=%g is outside (%g, 1); the procedure still runs but the "
                 "rate guarantee does not apply\n",
                 cfg.delta, lower);
  }
}

std::vector<long long> log_spaced_grid(double lg_min, double lg_max, int points) {
  if (points < 1) throw CLI::ValidationError("--grid-points must be >= 1");
  std::vector<long long> grid(points);
  for (int i = 0; i < points; ++i) {
    const double lg = points == 1 ? lg_min : lg_min + (lg_max - lg_min) * i / (points - 1);
    grid[i] = static_cast<long long>(std::llround(std::pow(10.0, lg)));
  }
  return grid;
}

int cmd_run(const ProblemFlags& pf, const RaFlags& rf, std::uint64_t seed,
            const std::string& stage_csv) {
  const raopt::NoisyProblem problem = raopt::make_problem(pf.spec);
  const raopt::RaConfig cfg = rf.resolve(problem);
  warn_if_outside_guarantee(cfg);
  const raopt::RaResult result = raopt::run(problem, cfg, seed);

  std::printf("theta_hat =");
  for (double t : result.theta_hat) std::printf(" %.10g", t);
  std::printf("\n");
  std::printf("error = %.10g\n",
              raopt::l2_distance(result.theta_hat, problem.theta_star));
  std::printf("stages (J_B) = %lld\n", result.j_used);
  std::printf("consumed = %lld of %lld\n", result.total_consumed, cfg.budget);
  if (!result.stage_records.empty()) {
    std::printf("last stage stop: %s\n",
                raopt::stop_reason_name(result.stage_records.back().result.stop_reason).c_str());
  }
  if (!stage_csv.empty()) {
    raopt::write_stage_csv(stage_csv, result);
    std::printf("stage trace written to %s\n", stage_csv.c_str());
  }
  return 0;
}

int cmd_sweep(const ProblemFlags& pf, const RaFlags& rf, raopt::SweepConfig sweep_cfg,
              const std::vector<long long>& explicit_grid, double lg_min, double lg_max,
              int grid_points, const std::string& out_dir, const std::string& metric_name) {
  sweep_cfg.problem = raopt::make_problem(pf.spec);
  sweep_cfg.ra = rf.resolve(sweep_cfg.problem);
  if (!explicit_grid.empty()) {
    std::set<long long> unique(explicit_grid.begin(), explicit_grid.end());
    if (unique.size() != explicit_grid.size()) {
      throw CLI::ValidationError("--budgets contains duplicate entries");
    }
    sweep_cfg.budget_grid.assign(unique.begin(), unique.end());
  } else {
    sweep_cfg.budget_grid = log_spaced_grid(lg_min, lg_max, grid_points);
    std::set<long long> unique(sweep_cfg.budget_grid.begin(), sweep_cfg.budget_grid.end());
    if (unique.size() != sweep_cfg.budget_grid.size()) {
      throw CLI::ValidationError("log-spaced grid rounds to duplicate budgets");
    }
  }
  sweep_cfg.metric =
      metric_name == "trimmed" ? raopt::ErrorMetric::TrimmedMean : raopt::ErrorMetric::Mean;
  warn_if_outside_guarantee(sweep_cfg.ra);

  const std::vector<raopt::ReplicationSummary> summaries = raopt::sweep(sweep_cfg);

  std::filesystem::create_directories(out_dir);
  const std::string summary_path = out_dir + "/summary.csv";
  const std::string reps_path = out_dir + "/replications.csv";
  raopt::write_summary_csv(summary_path, summaries);
  raopt::write_replications_csv(reps_path, summaries);

  std::vector<long long> budgets;
  std::vector<double> errors;
  for (const raopt::ReplicationSummary& s : summaries) {
    budgets.push_back(s.budget);
    errors.push_back(raopt::metric_error(s, sweep_cfg.metric));
  }
  for (const raopt::ReplicationSummary& s : summaries) {
    std::printf("B=%-10lld %s_error=%.6g mean_jb=%.4g\n", s.budget,
                metric_name == "trimmed" ? "trimmed" : "mean",
                raopt::metric_error(s, sweep_cfg.metric), s.mean_jb);
  }
  if (summaries.size() >= 2) {
    std::printf("loglog slope = %.6g\n", raopt::loglog_slope(budgets, errors));
    try {
      std::printf("rho_JB = %.6g\n", raopt::rho_jb(summaries));
    } catch (const std::domain_error&) {
      std::printf("rho_JB undefined (constant stage counts)\n");
    }
  }
  std::printf("wrote %s and %s\n", summary_path.c_str(), reps_path.c_str());
  return 0;
}

int cmd_schedule(const RaFlags& rf, long long rows) {
  raopt::RaConfig cfg = rf.cfg;
  cfg.theta0 = {1.0};  // irrelevant for schedule printing, satisfies validation
  raopt::validate(cfg);
  warn_if_outside_guarantee(cfg);
  std::printf("%6s %12s %12s %14s\n", "j", "gamma_j", "n_j", "tau_j");
  const long long limit = std::min(rows, cfg.max_stages);
  for (long long j = 1; j <= limit; ++j) {
    const raopt::StageSchedule s = raopt::schedule(cfg.budget, cfg, j);
    std::printf("%6lld %12.6f %12lld %14.6e\n", s.j, s.gamma, s.n, s.tau);
  }
  return 0;
}

int cmd_check(std::uint64_t seed, const std::string& only, bool inject_budget_fault) {
  std::vector<raopt::CheckResult> results;
  if (only == "all") {
    results = raopt::run_all_checks(seed, inject_budget_fault);
  } else if (only == "gradient") {
    results.push_back(raopt::check_gradient_consistency(seed));
  } else if (only == "descent") {
    results.push_back(raopt::check_descent(seed));
  } else if (only == "budget") {
    results.push_back(raopt::check_budget_conservation(seed, 200, inject_budget_fault));
  } else if (only == "gdbls") {
    results.push_back(raopt::check_deterministic_gd_bounds(seed));
  } else if (only == "gamma") {
    results.push_back(raopt::check_gamma_identity());
  } else {
    std::fprintf(stderr, "unknown suite '%s' (gradient|descent|budget|gdbls|gamma|all)\n",
                 only.c_str());
    return 2;
  }
  bool all_ok = true;
  for (const raopt::CheckResult& r : results) {
    std::printf("[%s] %-22s %s\n", r.passed ? "ok" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all_ok = all_ok && r.passed;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained noisy optimization via staged GD with "
               "backtracking line search"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Base seed; all randomness derives from it")
      ->capture_default_str();

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one staged optimization");
  ProblemFlags run_problem;
  RaFlags run_ra;
  run_problem.attach(run_cmd, /*required=*/true);
  run_ra.attach(run_cmd);
  std::string stage_csv;
  run_cmd->add_option("--stage-csv", stage_csv, "Write a per-stage trace CSV here");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Replication sweep over a budget grid");
  ProblemFlags sweep_problem;
  RaFlags sweep_ra;
  sweep_problem.attach(sweep_cmd, /*required=*/true);
  sweep_ra.attach(sweep_cmd);
  raopt::SweepConfig sweep_cfg;
  std::vector<long long> explicit_grid;
  double lg_min = 4.0;
  double lg_max = 7.0;
  int grid_points = 10;  // 3 points per decade over the default span
  std::string out_dir = "results";
  std::string metric_name = "mean";
  sweep_cmd->add_option("--budgets", explicit_grid,
                        "Explicit budget grid (overrides the log-spaced one)");
  sweep_cmd->add_option("--grid-min", lg_min, "log10 of the smallest budget")
      ->capture_default_str();
  sweep_cmd->add_option("--grid-max", lg_max, "log10 of the largest budget")
      ->capture_default_str();
  sweep_cmd->add_option("--grid-points", grid_points, "Number of log-spaced budgets")
      ->capture_default_str();
  sweep_cmd->add_option("--reps", sweep_cfg.replications, "Replications per budget")
      ->capture_default_str();
  sweep_cmd->add_option("--metric", metric_name, "Summary metric: mean or trimmed")
      ->check(CLI::IsMember({"mean", "trimmed"}))
      ->capture_default_str();
  sweep_cmd->add_option("--trim-fraction", sweep_cfg.trim_fraction,
                        "Fraction trimmed from each tail")
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_cfg.jobs, "Concurrent replications")
      ->capture_default_str();
  sweep_cmd->add_option("--out-dir", out_dir, "Directory for summary.csv / replications.csv")
      ->capture_default_str();

  // schedule
  auto* schedule_cmd = app.add_subcommand("schedule", "Print the stage schedule table");
  RaFlags schedule_ra;
  schedule_ra.attach(schedule_cmd);
  long long rows = 20;
  schedule_cmd->add_option("--rows", rows, "Number of stages to print")
      ->capture_default_str();

  // check
  auto* check_cmd = app.add_subcommand("check", "Run the property-check suites");
  std::string only = "all";
  bool inject_budget_fault = false;
  check_cmd->add_option("--only", only, "Suite: gradient|descent|budget|gdbls|gamma|all")
      ->capture_default_str();
  check_cmd->add_flag("--inject-budget-fault", inject_budget_fault,
                      "Deliberately desynchronize the budget ledger (must fail)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return cmd_run(run_problem, run_ra, seed, stage_csv);
    }
    if (sweep_cmd->parsed()) {
      sweep_cfg.base_seed = seed;
      return cmd_sweep(sweep_problem, sweep_ra, sweep_cfg, explicit_grid, lg_min, lg_max,
                       grid_points, out_dir, metric_name);
    }
    if (schedule_cmd->parsed()) {
      return cmd_schedule(schedule_ra, rows);
    }
    if (check_cmd->parsed()) {
      return cmd_check(seed, only, inject_budget_fault);
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
