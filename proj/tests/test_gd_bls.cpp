#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "raopt/checks.hpp"
#include "raopt/gd_bls.hpp"

using namespace raopt;

namespace {

Objective scaled_square(double a) {
  return [a](std::span<const double> x) { return a * x[0] * x[0]; };
}

}  // namespace

TEST_CASE("backtracking accepts the unit step on a gentle quadratic") {
  // g(x) = x^2 / 2 at x = 1: the unit step lands exactly on the minimizer.
  const BacktrackResult r = backtrack(scaled_square(0.5), Vec{1.0}, Vec{1.0}, 0.5, 0.5);
  CHECK(r.step == 1.0);
  CHECK(r.trial_value == 0.0);
  CHECK(r.evals == 1);
}

TEST_CASE("backtracking shrinks twice on a steep quadratic") {
  // g(x) = 2 x^2 at x = 1 (grad 4, gx 2): v = 1 and v = 0.5 overshoot.
  const BacktrackResult r = backtrack(scaled_square(2.0), Vec{1.0}, Vec{4.0}, 2.0, 0.5);
  CHECK(r.step == 0.25);
  CHECK(r.trial_value == 0.0);
  CHECK(r.evals == 3);
  CHECK(r.step >= 0.5 / 4.0);  // beta / L floor
}

TEST_CASE("zero gradient accepts immediately with unchanged value") {
  const BacktrackResult r = backtrack(scaled_square(1.0), Vec{2.0}, Vec{0.0}, 4.0, 0.5);
  CHECK(r.step == 1.0);
  CHECK(r.trial_value == 4.0);
  CHECK(r.evals == 1);
}

TEST_CASE("a never-acceptable objective triggers the underflow guard") {
  const Objective hostile = [](std::span<const double>) {
    return std::numeric_limits<double>::infinity();
  };
  CHECK_THROWS_AS(backtrack(hostile, Vec{1.0}, Vec{1.0}, 0.0, 0.5), std::runtime_error);
}

TEST_CASE("deterministic descent on the identity quadratic converges in one step") {
  const Objective g = [](std::span<const double> x) { return 0.5 * squared_norm(x); };
  const GradientFn dg = [](std::span<const double> x) { return Vec(x.begin(), x.end()); };
  const DeterministicRun run = run_deterministic(g, dg, Vec{3.0, -4.0}, 1, 0.5);
  REQUIRE(run.trajectory.size() == 2);
  CHECK(run.trajectory[1] == Vec{0.0, 0.0});
  CHECK(run.step_sizes[0] == 1.0);
}

TEST_CASE("deterministic descent is stationary at the minimizer") {
  const Objective g = [](std::span<const double> x) { return 0.5 * squared_norm(x); };
  const GradientFn dg = [](std::span<const double> x) { return Vec(x.begin(), x.end()); };
  const DeterministicRun run = run_deterministic(g, dg, Vec{0.0, 0.0}, 5, 0.5);
  for (const Vec& x : run.trajectory) CHECK(x == Vec{0.0, 0.0});
}

TEST_CASE("quadratic step floor and 1/T bound hold on random SPD problems") {
  const CheckResult r = check_deterministic_gd_bounds(99, 10, 6, 100);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("budget-metered run follows the charge schedule line by line") {
  const NoisyProblem problem = make_poisson1d();
  SampleStream stream(problem, 3);
  AveragedObjective objective(stream, 10);

  SUBCASE("initial charges leave too little for the first trial") {
    BudgetMeter meter(25, 1, 1);
    const GdBlsResult res = run_budgeted(objective, Vec{1.0}, meter, {0.5, 0.0});
    CHECK(res.theta == Vec{1.0});
    CHECK(res.remaining == 5);  // 25 - 10 (grad) - 10 (value)
    CHECK(res.iterations == 0);
    CHECK(res.stop_reason == StopReason::BudgetExhausted);
    CHECK(res.grad_evals == 1);
    CHECK(res.value_evals == 1);
  }

  SUBCASE("unaffordable initial gradient never starts") {
    BudgetMeter meter(9, 1, 1);
    const GdBlsResult res = run_budgeted(objective, Vec{1.0}, meter, {0.5, 0.0});
    CHECK(res.stop_reason == StopReason::NeverStarted);
    CHECK(res.theta == Vec{1.0});
    CHECK(res.remaining == 9);
    CHECK(res.grad_evals == 0);
    CHECK(res.value_evals == 0);
  }

  SUBCASE("unaffordable initial value never starts but keeps the gradient charge") {
    BudgetMeter meter(15, 1, 1);
    const GdBlsResult res = run_budgeted(objective, Vec{1.0}, meter, {0.5, 0.0});
    CHECK(res.stop_reason == StopReason::NeverStarted);
    CHECK(res.remaining == 5);
    CHECK(res.grad_evals == 1);
    CHECK(res.value_evals == 0);
  }

  SUBCASE("a generous tolerance stops after the initial charges") {
    BudgetMeter meter(1000, 1, 1);
    const GdBlsResult res = run_budgeted(objective, Vec{1.0}, meter, {0.5, 1e9});
    CHECK(res.stop_reason == StopReason::ToleranceMet);
    CHECK(res.theta == Vec{1.0});
    CHECK(res.remaining == 980);
    CHECK(res.iterations == 0);
  }
}

TEST_CASE("accepted traces satisfy the decrease inequality exactly") {
  const CheckResult r = check_descent(2025, 40);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("returned iterate is never worse than the start") {
  const NoisyProblem problem = make_poisson1d();
  for (int trial = 0; trial < 20; ++trial) {
    SampleStream stream(problem, derive_seed(60, static_cast<std::uint64_t>(trial)));
    AveragedObjective objective(stream, 20);
    BudgetMeter meter(200 + trial * 300, 1, 1);
    const GdBlsResult res = run_budgeted(objective, Vec{1.5}, meter, {0.5, 0.0});
    if (res.fn_trace.empty()) continue;  // never started
    BudgetMeter probe(1000000, 1, 1);
    const double f_start = *objective.value(Vec{1.5}, probe);
    const double f_end = *objective.value(res.theta, probe);
    CHECK(f_end <= f_start);
  }
}

TEST_CASE("budget identity reconstructs from the result counters") {
  const CheckResult r = check_budget_conservation(8, 100, false);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("an injected meter fault is caught") {
  const CheckResult r = check_budget_conservation(8, 100, true);
  CHECK_FALSE(r.passed);
}

TEST_CASE("overflowed starting points recover through backtracking") {
  // theta = 60 overflows no double but makes exp(theta x) huge; the search
  // must still make progress toward the minimizer near 0.
  const NoisyProblem problem = make_poisson1d();
  SampleStream stream(problem, 12);
  AveragedObjective objective(stream, 10);
  BudgetMeter meter(200000, 1, 1);
  const GdBlsResult res = run_budgeted(objective, Vec{60.0}, meter, {0.5, 0.0});
  CHECK(res.iterations > 0);
  CHECK(std::abs(res.theta[0]) < 60.0);
  for (std::size_t t = 0; t + 1 < res.fn_trace.size(); ++t) {
    CHECK(res.fn_trace[t + 1] <= res.fn_trace[t]);
  }
}
