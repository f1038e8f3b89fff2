#pragma once

#include <cstdint>
#include <vector>

#include "raopt/gd_bls.hpp"
#include "raopt/problems.hpp"
#include "raopt/vec.hpp"

namespace raopt {

/// Configuration for the multi-stage budget-allocation procedure. Defaults
/// follow the reference experimental setup: beta = 0.5, kappa = tau = 1,
/// unit costs 1, at most 10^4 stages and a stage sample-size floor of 100.
struct RaConfig {
  Vec theta0;
  long long budget = 0;
  double alpha_prime = 1.0;     // assumed noise exponent, in (0, 1]
  double delta = 0.95;          // stage geometry parameter, in [0, 1)
  long long max_stages = 10000; // J
  double kappa = 1.0;           // sample-size scale
  double tau = 1.0;             // tolerance scale
  double beta = 0.5;            // backtracking factor
  long long min_n = 100;        // floor on stage sample sizes; 0 disables
  long long cost_eval = 1;
  long long cost_grad = 1;
  bool final_stage_tau_zero = false;  // run stage J to budget exhaustion
};

/// Throws std::invalid_argument on out-of-range fields. The delta range
/// required by the rate guarantee is advisory; see delta_in_guarantee_range.
void validate(const RaConfig& cfg);

/// The rate guarantee needs delta in (2a'/(1+3a'), 1). The procedure itself
/// is well-defined for any delta in [0, 1), so violations warrant a warning,
/// not an error.
bool delta_in_guarantee_range(double delta, double alpha_prime);

struct StageSchedule {
  long long j = 1;     // stage index, 1-based
  double gamma = 0.0;  // 1 - delta^j
  long long n = 1;     // max(min_n, ceil(kappa * B^gamma))
  double tau = 0.0;    // tau * B^(-(a'/(1+a')) * gamma)
};

StageSchedule schedule(long long budget, const RaConfig& cfg, long long j);

struct StageRecord {
  StageSchedule schedule;
  GdBlsResult result;
};

struct RaResult {
  Vec theta_hat;
  long long j_used = 0;  // number of stage calls performed (J_B)
  std::vector<StageRecord> stage_records;
  long long total_consumed = 0;
};

/// Runs the staged procedure: stage j applies budget-metered GD-BLS to
/// F_{n_j}, warm-started at the previous stage's iterate with the previous
/// stage's remaining budget. All stages draw from one shared sample prefix.
RaResult run(const NoisyProblem& problem, const RaConfig& cfg, std::uint64_t seed);

/// Single-stage baseline: one GD-BLS call with
/// n = max(min_n, ceil(c_n * B^((1+alpha)/(1+3alpha)))) and tau = 0,
/// run until the budget is exhausted.
GdBlsResult single_stage_saa(const NoisyProblem& problem, const Vec& theta0,
                             long long budget, double alpha, double beta, double c_n,
                             std::uint64_t seed, long long min_n = 100,
                             long long cost_eval = 1, long long cost_grad = 1);

/// Residual of the stage-exponent recursion
///   gamma_j = pi * gamma'_j + (1 - pi) * gamma_{j-1},
/// with gamma'_j = w + (1 - w) * gamma_{j-1}, w = (1+a')/(1+3a') and
/// pi = (1 - delta)(1+3a')/(1+a'). Zero up to rounding for all j >= 2.
double gamma_identity_residual(double delta, double alpha_prime, long long j);

}  // namespace raopt
