#include "raopt/gd_bls.hpp"

#include <stdexcept>
#include <utility>

namespace raopt {

namespace {

void check_line_search_params(const LineSearchParams& params) {
  if (!(params.beta > 0.0 && params.beta < 1.0)) {
    throw std::invalid_argument("backtracking factor beta must lie in (0, 1)");
  }
  if (!(params.tau >= 0.0)) {
    throw std::invalid_argument("tolerance tau must be nonnegative");
  }
}

}  // namespace

std::string stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::ToleranceMet: return "tolerance-met";
    case StopReason::BudgetExhausted: return "budget-exhausted";
    case StopReason::NeverStarted: return "never-started";
  }
  return "unknown";
}

BacktrackResult backtrack(const Objective& g, std::span<const double> x,
                          std::span<const double> grad, double gx, double beta) {
  check_line_search_params({beta, 0.0});
  const double grad_sq = squared_norm(grad);
  BacktrackResult out;
  out.step = 1.0;
  out.trial_value = g(offset_point(x, out.step, grad));
  out.evals = 1;
  while (!sufficient_decrease(out.trial_value, gx, out.step, grad_sq)) {
    out.step *= beta;
    if (out.step < kStepUnderflow) {
      throw std::runtime_error("line search failed: step underflowed before acceptance");
    }
    out.trial_value = g(offset_point(x, out.step, grad));
    ++out.evals;
  }
  return out;
}

DeterministicRun run_deterministic(const Objective& g, const GradientFn& grad_g,
                                   const Vec& x0, long long iterations, double beta) {
  if (iterations < 0) throw std::invalid_argument("iteration count must be nonnegative");
  DeterministicRun run;
  run.trajectory.reserve(static_cast<std::size_t>(iterations) + 1);
  run.trajectory.push_back(x0);
  Vec x = x0;
  for (long long t = 0; t < iterations; ++t) {
    const Vec grad = grad_g(x);
    const double gx = g(x);
    const BacktrackResult bt = backtrack(g, x, grad, gx, beta);
    x = offset_point(x, bt.step, grad);
    run.trajectory.push_back(x);
    run.step_sizes.push_back(bt.step);
  }
  return run;
}

GdBlsResult run_budgeted(const AveragedObjective& objective, const Vec& theta0,
                         BudgetMeter& meter, const LineSearchParams& params) {
  check_line_search_params(params);
  const long long n = static_cast<long long>(objective.n());

  GdBlsResult res;
  res.theta = theta0;
  res.n = n;

  auto grad_opt = objective.gradient(res.theta, meter);
  if (!grad_opt) {
    res.remaining = meter.remaining();
    res.stop_reason = StopReason::NeverStarted;
    return res;
  }
  ++res.grad_evals;
  Vec grad = std::move(*grad_opt);
  double grad_sq = squared_norm(grad);
  res.grad_squared_norms.push_back(grad_sq);

  const auto value_opt = objective.value(res.theta, meter);
  if (!value_opt) {
    res.remaining = meter.remaining();
    res.stop_reason = StopReason::NeverStarted;
    return res;
  }
  ++res.value_evals;
  double current = *value_opt;
  res.fn_trace.push_back(current);

  for (;;) {
    // NaN gradient norms never satisfy the tolerance test.
    if (std::sqrt(grad_sq) <= params.tau) {
      res.stop_reason = StopReason::ToleranceMet;
      break;
    }
    double step = 1.0;
    Vec candidate = offset_point(res.theta, step, grad);
    auto trial = objective.value(candidate, meter);
    if (!trial) {
      res.stop_reason = StopReason::BudgetExhausted;
      break;
    }
    ++res.value_evals;

    bool accepted = sufficient_decrease(*trial, current, step, grad_sq);
    while (!accepted && meter.can_afford_evals(n)) {
      step *= params.beta;
      if (step < kStepUnderflow) {
        throw std::runtime_error("line search failed: step underflowed before acceptance");
      }
      candidate = offset_point(res.theta, step, grad);
      trial = objective.value(candidate, meter);
      ++res.value_evals;
      accepted = sufficient_decrease(*trial, current, step, grad_sq);
    }
    if (!accepted) {
      res.stop_reason = StopReason::BudgetExhausted;
      break;
    }

    res.theta = std::move(candidate);
    current = *trial;
    ++res.iterations;
    res.step_sizes.push_back(step);
    res.fn_trace.push_back(current);

    grad_opt = objective.gradient(res.theta, meter);
    if (!grad_opt) {
      res.stop_reason = StopReason::BudgetExhausted;
      break;
    }
    ++res.grad_evals;
    grad = std::move(*grad_opt);
    grad_sq = squared_norm(grad);
    res.grad_squared_norms.push_back(grad_sq);
  }

  res.remaining = meter.remaining();
  return res;
}

}  // namespace raopt
