#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "raopt/saa.hpp"
#include "raopt/vec.hpp"

namespace raopt {

struct LineSearchParams {
  double beta = 0.5;  // backtracking shrink factor, in (0, 1)
  double tau = 0.0;   // gradient-norm stopping tolerance, >= 0
};

enum class StopReason { ToleranceMet, BudgetExhausted, NeverStarted };

std::string stop_reason_name(StopReason reason);

/// Sufficient-decrease test shared by every line search in this library.
/// A non-finite trial value (NaN or +inf from an overflowed exponential)
/// never passes, so backtracking shrinks past overflow regions.
inline bool sufficient_decrease(double trial, double current, double step,
                                double grad_squared_norm) {
  if (std::isnan(trial) || trial == std::numeric_limits<double>::infinity()) return false;
  return trial <= current - 0.5 * step * grad_squared_norm;
}

/// Steps smaller than this abort the search instead of looping on denormals.
inline constexpr double kStepUnderflow = 1e-300;

struct BacktrackResult {
  double step = 1.0;
  double trial_value = 0.0;
  long long evals = 0;  // objective evaluations performed
};

using Objective = std::function<double(std::span<const double>)>;
using GradientFn = std::function<Vec(std::span<const double>)>;

/// Backtracking line search: returns the largest step beta^k (k >= 0) with
/// g(x - step * grad) <= gx - (step/2) * ||grad||^2. Throws std::runtime_error
/// if the step underflows before acceptance.
BacktrackResult backtrack(const Objective& g, std::span<const double> x,
                          std::span<const double> grad, double gx, double beta);

struct DeterministicRun {
  std::vector<Vec> trajectory;     // x_0 .. x_T
  std::vector<double> step_sizes;  // v_1 .. v_T
};

/// Plain gradient descent with backtracking step sizes, run for a fixed
/// number of iterations with no budget accounting.
DeterministicRun run_deterministic(const Objective& g, const GradientFn& grad_g,
                                   const Vec& x0, long long iterations, double beta);

struct GdBlsResult {
  Vec theta;                       // returned iterate
  long long remaining = 0;         // budget left (floored at 0 by construction)
  long long iterations = 0;        // accepted steps
  StopReason stop_reason = StopReason::NeverStarted;
  std::vector<double> step_sizes;  // accepted v_t, one per iteration
  std::vector<double> fn_trace;    // F_n at theta_0 .. theta_T (accepted values)
  std::vector<double> grad_squared_norms;  // ||grad F_n||^2 at each computed gradient
  long long value_evals = 0;       // F_n evaluations (each charged n * cost_eval)
  long long grad_evals = 0;        // grad F_n evaluations (each charged n * cost_grad)
  long long n = 0;                 // sample size of the objective
};

/// Budget-metered gradient descent with backtracking line search on F_n.
/// Charges the meter for every F_n value and gradient; stops when the
/// gradient norm reaches params.tau or the next charge is unaffordable.
GdBlsResult run_budgeted(const AveragedObjective& objective, const Vec& theta0,
                         BudgetMeter& meter, const LineSearchParams& params);

}  // namespace raopt
