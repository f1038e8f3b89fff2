#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "raopt/saa.hpp"

using namespace raopt;

TEST_CASE("budget meter charges exactly or not at all") {
  BudgetMeter meter(10, 1, 1);
  CHECK(meter.charge_evals(10));
  CHECK(meter.remaining() == 0);
  CHECK(meter.consumed() == 10);

  BudgetMeter short_meter(9, 1, 1);
  CHECK_FALSE(short_meter.charge_evals(10));
  CHECK(short_meter.remaining() == 9);
  CHECK(short_meter.consumed() == 0);

  BudgetMeter grad_meter(25, 1, 1);
  CHECK(grad_meter.charge_grads(10));
  CHECK(grad_meter.remaining() == 15);

  BudgetMeter empty(0);
  CHECK_FALSE(empty.charge_evals(1));
  CHECK(empty.can_afford_evals(0));
}

TEST_CASE("budget meter conservation under random interleavings") {
  RandomState rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const long long budget = static_cast<long long>(rng.uniform() * 1000);
    const long long ce = 1 + static_cast<long long>(rng.uniform() * 4);
    const long long cg = 1 + static_cast<long long>(rng.uniform() * 4);
    BudgetMeter meter(budget, ce, cg);
    for (int op = 0; op < 50; ++op) {
      const long long count = static_cast<long long>(rng.uniform() * 30);
      if (rng.uniform() < 0.5) {
        meter.charge_evals(count);
      } else {
        meter.charge_grads(count);
      }
      REQUIRE(meter.remaining() + meter.consumed() == budget);
      REQUIRE(meter.remaining() >= 0);
    }
  }
}

TEST_CASE("meter rejects invalid construction") {
  CHECK_THROWS_AS(BudgetMeter(-1), std::invalid_argument);
  CHECK_THROWS_AS(BudgetMeter(10, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(BudgetMeter(10, 1, -2), std::invalid_argument);
}

TEST_CASE("prefix extension is monotone and stable") {
  const NoisyProblem problem = make_poisson1d();
  SampleStream stream(problem, 42);
  stream.extend_prefix(5);
  CHECK(stream.size() == 5);
  Vec before;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto z = stream.sample(i);
    before.insert(before.end(), z.begin(), z.end());
  }
  stream.extend_prefix(3);  // shrinking request is a no-op
  CHECK(stream.size() == 5);
  stream.extend_prefix(9);
  CHECK(stream.size() == 9);
  Vec after;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto z = stream.sample(i);
    after.insert(after.end(), z.begin(), z.end());
  }
  CHECK(before == after);

  SampleStream twin(problem, 42);
  twin.extend_prefix(9);
  for (std::size_t i = 0; i < 9; ++i) {
    const auto za = stream.sample(i);
    const auto zb = twin.sample(i);
    REQUIRE(za.size() == zb.size());
    for (std::size_t k = 0; k < za.size(); ++k) CHECK(za[k] == zb[k]);
  }
}

TEST_CASE("averaged objective charges n times the unit cost") {
  const NoisyProblem problem = make_poisson1d();
  SampleStream stream(problem, 7);
  AveragedObjective objective(stream, 10);

  BudgetMeter meter(10, 1, 1);
  const auto value = objective.value(Vec{0.5}, meter);
  REQUIRE(value.has_value());
  CHECK(meter.remaining() == 0);

  const auto refused = objective.value(Vec{0.5}, meter);
  CHECK_FALSE(refused.has_value());
  CHECK(meter.remaining() == 0);

  BudgetMeter grad_meter(25, 1, 1);
  const auto grad = objective.gradient(Vec{0.5}, grad_meter);
  REQUIRE(grad.has_value());
  CHECK(grad_meter.remaining() == 15);

  BudgetMeter empty(0);
  CHECK_FALSE(objective.gradient(Vec{0.5}, empty).has_value());
}

TEST_CASE("degenerate mean problem has flat objective at zero") {
  const NoisyProblem problem = make_mean_estimation({MeanDistKind::PointMass, 3.0, 0.0});
  SampleStream stream(problem, 1);
  AveragedObjective objective(stream, 25);
  BudgetMeter meter(1000, 1, 1);
  CHECK(*objective.value(Vec{0.0}, meter) == 0.0);
  CHECK((*objective.gradient(Vec{3.0}, meter))[0] == 0.0);
}

TEST_CASE("F_n is a pure function of theta for a fixed stream") {
  const NoisyProblem problem = make_poisson1d();
  SampleStream stream(problem, 100);
  AveragedObjective objective(stream, 50);
  BudgetMeter meter(1000000, 1, 1);
  const Vec theta{0.7};
  const double v1 = *objective.value(theta, meter);
  const double v2 = *objective.value(theta, meter);
  CHECK(v1 == v2);

  SampleStream stream_again(problem, 100);
  AveragedObjective objective_again(stream_again, 50);
  CHECK(*objective_again.value(theta, meter) == v1);
}

TEST_CASE("nested prefixes satisfy the partial-sum identity") {
  const NoisyProblem problem = make_poisson1d();
  SampleStream stream(problem, 2718);
  const std::size_t n = 40;
  const std::size_t m = 170;
  AveragedObjective fn(stream, n);
  AveragedObjective fm(stream, m);
  BudgetMeter meter(1000000, 1, 1);
  const Vec theta{0.3};
  const double value_n = *fn.value(theta, meter);
  const double value_m = *fm.value(theta, meter);
  double tail = 0.0;
  for (std::size_t i = n; i < m; ++i) {
    tail += eval_f(problem, theta, stream.sample(i));
  }
  const double lhs = static_cast<double>(m) * value_m - static_cast<double>(n) * value_n;
  CHECK(lhs == doctest::Approx(tail).epsilon(1e-12));
}
