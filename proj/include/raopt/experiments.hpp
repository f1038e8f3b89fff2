#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "raopt/problems.hpp"
#include "raopt/retrospective.hpp"

namespace raopt {

enum class ErrorMetric { Mean, TrimmedMean };

/// Replication sweep over a budget grid. Each (budget, replication) cell is
/// an independent staged run seeded from derive_seed(base_seed, B, r), so
/// enlarging the grid or the replication count never perturbs existing cells.
struct SweepConfig {
  NoisyProblem problem;
  std::vector<long long> budget_grid;  // strictly increasing
  int replications = 20;
  RaConfig ra;  // template; the budget field is overwritten per grid point
  ErrorMetric metric = ErrorMetric::Mean;
  double trim_fraction = 0.1;
  std::uint64_t base_seed = 0;
  int jobs = 1;  // replication-level parallelism; aggregation order is fixed
};

struct ReplicationRecord {
  long long budget = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  double error = 0.0;  // || theta_hat - theta_star ||
  long long j_used = 0;
  long long consumed = 0;
};

struct ReplicationSummary {
  long long budget = 0;
  double mean_error = 0.0;
  double trimmed_error = 0.0;
  double sd_error = 0.0;  // NaN with a single replication
  double mean_jb = 0.0;
  std::vector<ReplicationRecord> records;
};

std::vector<ReplicationSummary> sweep(const SweepConfig& cfg);

/// Mean after dropping floor(fraction * m) values from each tail.
double trimmed_mean(std::vector<double> values, double fraction);

/// Pearson correlation coefficient; throws std::domain_error when either
/// argument has zero variance.
double pearson_corr(std::span<const double> xs, std::span<const double> ys);

/// OLS slope of log10(error) against log10(budget).
double loglog_slope(std::span<const long long> budgets, std::span<const double> errors);

/// Correlation between the per-budget average stage counts and log(B).
double rho_jb(const std::vector<ReplicationSummary>& summaries);

/// The summary error selected by the configured metric.
double metric_error(const ReplicationSummary& summary, ErrorMetric metric);

}  // namespace raopt
