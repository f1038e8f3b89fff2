#include "raopt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace raopt {

namespace {

void validate(const SweepConfig& cfg) {
  if (cfg.budget_grid.empty()) throw std::invalid_argument("budget grid is empty");
  for (std::size_t i = 0; i + 1 < cfg.budget_grid.size(); ++i) {
    if (cfg.budget_grid[i] >= cfg.budget_grid[i + 1]) {
      throw std::invalid_argument("budget grid must be strictly increasing");
    }
  }
  if (cfg.budget_grid.front() < 0) throw std::invalid_argument("budgets must be nonnegative");
  if (cfg.replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (!(cfg.trim_fraction >= 0.0 && cfg.trim_fraction < 0.5)) {
    throw std::invalid_argument("trim fraction must lie in [0, 0.5)");
  }
  if (cfg.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

double mean_of(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean_of(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(values.size() - 1));
}

}  // namespace

std::vector<ReplicationSummary> sweep(const SweepConfig& cfg) {
  validate(cfg);
  raopt::validate(cfg.ra);

  const std::size_t n_budgets = cfg.budget_grid.size();
  const std::size_t reps = static_cast<std::size_t>(cfg.replications);
  std::vector<ReplicationRecord> cells(n_budgets * reps);

  auto run_cell = [&](std::size_t flat) {
    const std::size_t bi = flat / reps;
    const std::size_t ri = flat % reps;
    const long long budget = cfg.budget_grid[bi];
    const std::uint64_t seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(budget),
                                           static_cast<std::uint64_t>(ri));
    RaConfig rc = cfg.ra;
    rc.budget = budget;
    const RaResult result = run(cfg.problem, rc, seed);
    ReplicationRecord& rec = cells[flat];
    rec.budget = budget;
    rec.rep = static_cast<int>(ri);
    rec.seed = seed;
    rec.error = l2_distance(result.theta_hat, cfg.problem.theta_star);
    rec.j_used = result.j_used;
    rec.consumed = result.total_consumed;
  };

  const std::size_t total = cells.size();
  if (cfg.jobs == 1) {
    for (std::size_t flat = 0; flat < total; ++flat) run_cell(flat);
  } else {
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::min<std::size_t>(cfg.jobs, total);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t flat = next.fetch_add(1);
          if (flat >= total) return;
          run_cell(flat);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  // Aggregation runs in fixed (budget, replication) order regardless of
  // how the cells were executed.
  std::vector<ReplicationSummary> summaries(n_budgets);
  for (std::size_t bi = 0; bi < n_budgets; ++bi) {
    ReplicationSummary& s = summaries[bi];
    s.budget = cfg.budget_grid[bi];
    s.records.assign(cells.begin() + bi * reps, cells.begin() + (bi + 1) * reps);
    std::vector<double> errors(reps);
    double jb_sum = 0.0;
    for (std::size_t ri = 0; ri < reps; ++ri) {
      errors[ri] = s.records[ri].error;
      jb_sum += static_cast<double>(s.records[ri].j_used);
    }
    s.mean_error = mean_of(errors);
    s.trimmed_error = trimmed_mean(errors, cfg.trim_fraction);
    s.sd_error = sample_sd(errors);
    s.mean_jb = jb_sum / static_cast<double>(reps);
  }
  return summaries;
}

double trimmed_mean(std::vector<double> values, double fraction) {
  if (values.empty()) throw std::invalid_argument("trimmed mean of empty input");
  if (!(fraction >= 0.0 && fraction < 0.5)) {
    throw std::invalid_argument("trim fraction must lie in [0, 0.5)");
  }
  std::sort(values.begin(), values.end());
  const std::size_t drop =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(values.size())));
  double s = 0.0;
  for (std::size_t i = drop; i < values.size() - drop; ++i) s += values[i];
  return s / static_cast<double>(values.size() - 2 * drop);
}

double pearson_corr(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("correlation inputs differ in length");
  if (xs.size() < 2) throw std::invalid_argument("correlation needs at least two points");
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::domain_error("correlation undefined: zero variance input");
  }
  return sxy / std::sqrt(sxx * syy);
}

double loglog_slope(std::span<const long long> budgets, std::span<const double> errors) {
  if (budgets.size() != errors.size()) throw std::invalid_argument("slope inputs differ in length");
  if (budgets.size() < 2) throw std::invalid_argument("slope needs at least two points");
  std::vector<double> xs(budgets.size());
  std::vector<double> ys(errors.size());
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (budgets[i] <= 0) throw std::invalid_argument("budgets must be positive");
    if (!(errors[i] > 0.0)) throw std::invalid_argument("errors must be strictly positive");
    xs[i] = std::log10(static_cast<double>(budgets[i]));
    ys[i] = std::log10(errors[i]);
  }
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope undefined: constant budgets");
  return sxy / sxx;
}

double rho_jb(const std::vector<ReplicationSummary>& summaries) {
  if (summaries.size() < 2) throw std::invalid_argument("rho_jb needs at least two budgets");
  std::vector<double> jb(summaries.size());
  std::vector<double> logb(summaries.size());
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    jb[i] = summaries[i].mean_jb;
    logb[i] = std::log(static_cast<double>(summaries[i].budget));
  }
  return pearson_corr(jb, logb);
}

double metric_error(const ReplicationSummary& summary, ErrorMetric metric) {
  return metric == ErrorMetric::Mean ? summary.mean_error : summary.trimmed_error;
}

}  // namespace raopt
