#include "raopt/retrospective.hpp"

#include <cmath>
#include <stdexcept>

namespace raopt {

void validate(const RaConfig& cfg) {
  if (cfg.budget < 0) throw std::invalid_argument("budget must be nonnegative");
  if (!(cfg.alpha_prime > 0.0 && cfg.alpha_prime <= 1.0)) {
    throw std::invalid_argument("alpha' must lie in (0, 1]");
  }
  if (!(cfg.delta >= 0.0 && cfg.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1)");
  }
  if (cfg.max_stages < 1) throw std::invalid_argument("max stage count must be positive");
  if (!(cfg.kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1)");
  }
  if (cfg.min_n < 0) throw std::invalid_argument("min_n must be nonnegative");
  if (cfg.cost_eval < 1 || cfg.cost_grad < 1) {
    throw std::invalid_argument("unit costs must be positive integers");
  }
}

bool delta_in_guarantee_range(double delta, double alpha_prime) {
  const double lower = 2.0 * alpha_prime / (1.0 + 3.0 * alpha_prime);
  return delta > lower && delta < 1.0;
}

StageSchedule schedule(long long budget, const RaConfig& cfg, long long j) {
  if (j < 1 || j > cfg.max_stages) {
    throw std::invalid_argument("stage index out of range");
  }
  StageSchedule s;
  s.j = j;
  s.gamma = 1.0 - std::pow(cfg.delta, static_cast<double>(j));
  // Powers are evaluated against the original budget; a zero budget is
  // treated as 1 so the degenerate schedule stays finite.
  const double base = budget > 1 ? static_cast<double>(budget) : 1.0;
  const double raw = std::ceil(cfg.kappa * std::pow(base, s.gamma));
  long long n = raw > 9e18 ? static_cast<long long>(9e18) : static_cast<long long>(raw);
  if (n < 1) n = 1;
  s.n = std::max(cfg.min_n, n);
  if (s.n < 1) s.n = 1;
  const double exponent = cfg.alpha_prime / (1.0 + cfg.alpha_prime);
  s.tau = cfg.tau * std::pow(base, -exponent * s.gamma);
  return s;
}

RaResult run(const NoisyProblem& problem, const RaConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  if (cfg.theta0.size() != static_cast<std::size_t>(problem.dim)) {
    throw std::invalid_argument("theta0 length does not match problem dimension");
  }

  SampleStream stream(problem, seed);
  BudgetMeter meter(cfg.budget, cfg.cost_eval, cfg.cost_grad);

  RaResult out;
  out.theta_hat = cfg.theta0;
  long long j = 0;
  // At least one stage is always attempted, so j_used >= 1 even on an
  // empty budget (the stage reports NeverStarted).
  do {
    ++j;
    StageSchedule sch = schedule(cfg.budget, cfg, j);
    if (cfg.final_stage_tau_zero && j == cfg.max_stages) sch.tau = 0.0;
    AveragedObjective objective(stream, static_cast<std::size_t>(sch.n));
    GdBlsResult stage =
        run_budgeted(objective, out.theta_hat, meter, {cfg.beta, sch.tau});
    out.theta_hat = stage.theta;
    const bool never_started = stage.stop_reason == StopReason::NeverStarted;
    out.stage_records.push_back({sch, std::move(stage)});
    // Stage sample sizes are nondecreasing, so once a stage cannot afford
    // its first gradient no later stage can either.
    if (never_started) break;
  } while (meter.remaining() > 0 && j < cfg.max_stages);

  out.j_used = j;
  out.total_consumed = meter.consumed();
  return out;
}

GdBlsResult single_stage_saa(const NoisyProblem& problem, const Vec& theta0,
                             long long budget, double alpha, double beta, double c_n,
                             std::uint64_t seed, long long min_n, long long cost_eval,
                             long long cost_grad) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(c_n > 0.0)) throw std::invalid_argument("c_n must be positive");
  if (theta0.size() != static_cast<std::size_t>(problem.dim)) {
    throw std::invalid_argument("theta0 length does not match problem dimension");
  }
  const double base = budget > 1 ? static_cast<double>(budget) : 1.0;
  const double exponent = (1.0 + alpha) / (1.0 + 3.0 * alpha);
  long long n = static_cast<long long>(std::ceil(c_n * std::pow(base, exponent)));
  if (n < 1) n = 1;
  n = std::max(min_n, n);
  if (n < 1) n = 1;

  SampleStream stream(problem, seed);
  BudgetMeter meter(budget, cost_eval, cost_grad);
  AveragedObjective objective(stream, static_cast<std::size_t>(n));
  return run_budgeted(objective, theta0, meter, {beta, 0.0});
}

double gamma_identity_residual(double delta, double alpha_prime, long long j) {
  if (j < 2) throw std::invalid_argument("the recursion is defined for j >= 2");
  if (!(alpha_prime > 0.0 && alpha_prime <= 1.0)) {
    throw std::invalid_argument("alpha' must lie in (0, 1]");
  }
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in [0, 1)");
  const double gamma_prev = 1.0 - std::pow(delta, static_cast<double>(j - 1));
  const double gamma_j = 1.0 - std::pow(delta, static_cast<double>(j));
  const double w = (1.0 + alpha_prime) / (1.0 + 3.0 * alpha_prime);
  const double gamma_accel = w + (1.0 - w) * gamma_prev;
  const double pi = (1.0 - delta) * (1.0 + 3.0 * alpha_prime) / (1.0 + alpha_prime);
  return std::abs(gamma_j - (pi * gamma_accel + (1.0 - pi) * gamma_prev));
}

}  // namespace raopt
