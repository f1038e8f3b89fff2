#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace raopt {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // summary when passing, first failing case otherwise
};

/// Central-difference validation of the hand-coded gradients: `pairs`
/// random (theta, z) draws per problem kind with ||theta|| <= 3, step 1e-6,
/// relative error at most 1e-4. Pairs with non-finite values are skipped.
CheckResult check_gradient_consistency(std::uint64_t seed, int pairs = 200);

/// Runs budget-metered GD-BLS on randomized configurations and verifies the
/// accepted trace: F_n values nonincreasing, each accepted step satisfying
/// the sufficient-decrease inequality exactly as evaluated, step sizes that
/// are integer powers of beta, and a returned value never worse than the
/// starting one.
CheckResult check_descent(std::uint64_t seed, int runs = 40);

/// Randomized budget-conservation and charge-decomposition checks. With
/// `inject_fault` one uncounted unit is burned mid-run, which the
/// decomposition check must flag.
CheckResult check_budget_conservation(std::uint64_t seed, int runs = 200,
                                      bool inject_fault = false);

/// Deterministic GD-BLS guarantees on random SPD quadratics with known
/// spectrum: every accepted step is at least beta / lambda_max, and the
/// suboptimality after T steps is at most ||x0 - x*||^2 lambda_max / (2 beta T).
CheckResult check_deterministic_gd_bounds(std::uint64_t seed, int matrices = 50,
                                          int max_dim = 10, long long iterations = 200);

/// Stage-exponent recursion residual over a (delta, alpha') grid, j <= 50.
CheckResult check_gamma_identity();

std::vector<CheckResult> run_all_checks(std::uint64_t seed, bool inject_budget_fault = false);

}  // namespace raopt
