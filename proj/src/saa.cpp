#include "raopt/saa.hpp"

#include <limits>
#include <stdexcept>

namespace raopt {

BudgetMeter::BudgetMeter(long long budget, long long cost_eval, long long cost_grad)
    : initial_(budget), remaining_(budget), cost_eval_(cost_eval), cost_grad_(cost_grad) {
  if (budget < 0) throw std::invalid_argument("budget must be nonnegative");
  if (cost_eval < 1 || cost_grad < 1) {
    throw std::invalid_argument("unit costs must be positive integers");
  }
}

long long BudgetMeter::units_for(long long count, long long unit_cost) {
  if (count < 0) throw std::invalid_argument("charge count must be nonnegative");
  long long units = 0;
  if (__builtin_mul_overflow(count, unit_cost, &units)) {
    return std::numeric_limits<long long>::max();  // dwarfs any budget; refused
  }
  return units;
}

bool BudgetMeter::charge_units(long long units) {
  if (units > remaining_) return false;
  remaining_ -= units;
  consumed_ += units;
  return true;
}

bool BudgetMeter::charge_evals(long long count) {
  return charge_units(units_for(count, cost_eval_));
}

bool BudgetMeter::charge_grads(long long count) {
  return charge_units(units_for(count, cost_grad_));
}

bool BudgetMeter::can_afford_evals(long long count) const {
  return units_for(count, cost_eval_) <= remaining_;
}

bool BudgetMeter::can_afford_grads(long long count) const {
  return units_for(count, cost_grad_) <= remaining_;
}

SampleStream::SampleStream(NoisyProblem problem, std::uint64_t seed)
    : problem_(std::move(problem)), rng_(seed) {}

void SampleStream::extend_prefix(std::size_t n) {
  const std::size_t stride = static_cast<std::size_t>(problem_.sample_dim);
  data_.reserve(n * stride);
  while (count_ < n) {
    const SamplePoint z = raopt::sample(problem_, rng_);
    data_.insert(data_.end(), z.begin(), z.end());
    ++count_;
  }
}

std::span<const double> SampleStream::sample(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("sample index beyond prefix");
  const std::size_t stride = static_cast<std::size_t>(problem_.sample_dim);
  return {data_.data() + i * stride, stride};
}

AveragedObjective::AveragedObjective(SampleStream& stream, std::size_t n)
    : stream_(&stream), n_(n) {
  if (n == 0) throw std::invalid_argument("averaged objective requires n >= 1");
  stream.extend_prefix(n);
}

std::optional<double> AveragedObjective::value(std::span<const double> theta,
                                               BudgetMeter& meter) const {
  if (!meter.charge_evals(static_cast<long long>(n_))) return std::nullopt;
  // Fixed left-to-right accumulation so F_n is bit-stable across runs.
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    sum += eval_f(stream_->problem(), theta, stream_->sample(i));
  }
  return sum / static_cast<double>(n_);
}

std::optional<Vec> AveragedObjective::gradient(std::span<const double> theta,
                                               BudgetMeter& meter) const {
  if (!meter.charge_grads(static_cast<long long>(n_))) return std::nullopt;
  Vec sum(theta.size(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const Vec g = eval_grad_f(stream_->problem(), theta, stream_->sample(i));
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += g[k];
  }
  for (double& s : sum) s /= static_cast<double>(n_);
  return sum;
}

}  // namespace raopt
