#pragma once

#include <cstdint>
#include <random>

namespace raopt {

/// splitmix64 finalizer. Bijective on 64-bit integers.
std::uint64_t mix64(std::uint64_t x);

/// Folds a tag into a seed. Stream seeds are derived as
/// derive_seed(base, tag1, tag2, ...) so that adding new (tag) combinations
/// never perturbs the streams of existing ones.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag1, std::uint64_t tag2);

/// Seeded random stream. The engine is std::mt19937_64 (fully specified by
/// the standard); the distribution transforms are implemented here because
/// the std:: distributions are implementation-defined and would not be
/// reproducible across standard libraries.
class RandomState {
 public:
  explicit RandomState(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller (two uniforms per draw, no cache).
  double normal();

  /// Exact Poisson draw. Knuth's product method, applied in chunks of
  /// mean <= 30 so that exp(-mean) never underflows.
  long poisson(double mean);

  /// Gamma(shape, scale 1), Marsaglia-Tsang; shape < 1 handled by boosting.
  double gamma(double shape);

  /// Chi-square with (possibly non-integer) dof > 0.
  double chi_square(double dof);

  /// Student-t with dof > 0: N(0,1) / sqrt(chi2(dof)/dof).
  double student_t(double dof);

 private:
  long poisson_small(double mean);

  std::mt19937_64 engine_;
};

}  // namespace raopt
