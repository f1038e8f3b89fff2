#include "raopt/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace raopt {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  return mix64(base ^ mix64(tag));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag1, std::uint64_t tag2) {
  return derive_seed(derive_seed(base, tag1), tag2);
}

double RandomState::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomState::normal() {
  // 1 - u is in (0, 1], keeping the log argument away from zero.
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  return r * std::cos(angle);
}

long RandomState::poisson_small(double mean) {
  if (mean <= 0.0) return 0;
  const double limit = std::exp(-mean);
  long k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform();
  } while (p > limit);
  return k - 1;
}

long RandomState::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and nonnegative");
  }
  long total = 0;
  // Poisson(a + b) = Poisson(a) + Poisson(b) for independent draws.
  while (mean > 30.0) {
    total += poisson_small(30.0);
    mean -= 30.0;
  }
  return total + poisson_small(mean);
}

double RandomState::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
  if (shape < 1.0) {
    const double u = 1.0 - uniform();  // (0, 1]
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomState::chi_square(double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi_square: dof must be positive");
  return 2.0 * gamma(0.5 * dof);
}

double RandomState::student_t(double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("student_t: dof must be positive");
  return normal() / std::sqrt(chi_square(dof) / dof);
}

}  // namespace raopt
