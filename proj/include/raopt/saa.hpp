#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "raopt/problems.hpp"
#include "raopt/vec.hpp"

namespace raopt {

/// Integer budget ledger. All resource consumption flows through a meter:
/// a charge either succeeds in full or leaves the ledger untouched, and
/// remaining + consumed equals the initial budget at all times.
class BudgetMeter {
 public:
  explicit BudgetMeter(long long budget, long long cost_eval = 1, long long cost_grad = 1);

  /// Charge for `count` pointwise f evaluations (count * cost_eval units).
  bool charge_evals(long long count);
  /// Charge for `count` pointwise grad f evaluations (count * cost_grad units).
  bool charge_grads(long long count);

  bool can_afford_evals(long long count) const;
  bool can_afford_grads(long long count) const;

  long long initial() const { return initial_; }
  long long remaining() const { return remaining_; }
  long long consumed() const { return consumed_; }
  long long cost_eval() const { return cost_eval_; }
  long long cost_grad() const { return cost_grad_; }

 private:
  bool charge_units(long long units);
  static long long units_for(long long count, long long unit_cost);

  long long initial_;
  long long remaining_;
  long long consumed_ = 0;
  long long cost_eval_;
  long long cost_grad_;
};

/// Lazily generated i.i.d. sample prefix shared by all approximation levels
/// of one optimization run. Extending the prefix never mutates existing
/// entries, so F_n and F_m with n < m are built from nested sample sets.
class SampleStream {
 public:
  SampleStream(NoisyProblem problem, std::uint64_t seed);

  void extend_prefix(std::size_t n);
  std::size_t size() const { return count_; }
  std::span<const double> sample(std::size_t i) const;
  const NoisyProblem& problem() const { return problem_; }

 private:
  NoisyProblem problem_;
  RandomState rng_;
  Vec data_;  // flat storage, stride = problem_.sample_dim
  std::size_t count_ = 0;
};

/// F_n: the arithmetic mean of f(theta, Z_i) over the first n prefix
/// entries, charging the meter n * cost per call. An unaffordable charge is
/// refused in full and reported as std::nullopt (a normal outcome).
class AveragedObjective {
 public:
  AveragedObjective(SampleStream& stream, std::size_t n);

  std::optional<double> value(std::span<const double> theta, BudgetMeter& meter) const;
  std::optional<Vec> gradient(std::span<const double> theta, BudgetMeter& meter) const;

  std::size_t n() const { return n_; }
  const SampleStream& stream() const { return *stream_; }

 private:
  SampleStream* stream_;
  std::size_t n_;
};

}  // namespace raopt
