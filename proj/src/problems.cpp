#include "raopt/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace raopt {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_dims(const NoisyProblem& problem, std::span<const double> theta,
                std::span<const double> z) {
  require(theta.size() == static_cast<std::size_t>(problem.dim),
          "eval: theta length does not match problem dimension");
  require(z.size() == static_cast<std::size_t>(problem.sample_dim),
          "eval: sample length does not match problem sample dimension");
}

}  // namespace

NoisyProblem make_poisson1d() {
  NoisyProblem p;
  p.kind = ProblemKind::Poisson1D;
  p.dim = 1;
  p.sample_dim = 2;
  p.theta_star = {0.0};
  return p;
}

NoisyProblem make_poisson_multi(int d, std::uint64_t a_star_seed) {
  require(d >= 2, "poisson-multi: dimension must be at least 2");
  NoisyProblem p;
  p.kind = ProblemKind::PoissonMulti;
  p.dim = d;
  p.sample_dim = d + 1;
  RandomState rng(a_star_seed);
  p.a_star.resize(d - 1);
  for (double& a : p.a_star) a = rng.normal();
  p.theta_star.assign(d, 0.0);
  for (int i = 1; i < d; ++i) p.theta_star[i] = p.a_star[i - 1];
  return p;
}

NoisyProblem make_heavy_tailed(double nu) {
  require(nu > 1.0, "heavy: nu must be greater than 1");
  NoisyProblem p;
  p.kind = ProblemKind::HeavyTailed1D;
  p.dim = 1;
  p.sample_dim = 3;
  p.nu = nu;
  p.theta_star = {0.0};
  return p;
}

NoisyProblem make_mean_estimation(MeanDist dist) {
  if (dist.kind == MeanDistKind::Normal) {
    require(dist.sigma >= 0.0, "mean-normal: sigma must be nonnegative");
  }
  NoisyProblem p;
  p.kind = ProblemKind::MeanEstimation1D;
  p.dim = 1;
  p.sample_dim = 1;
  p.mean_dist = dist;
  p.theta_star = {dist.location};
  return p;
}

NoisyProblem make_problem(const ProblemSpec& spec) {
  if (spec.kind == "poisson1d") return make_poisson1d();
  if (spec.kind == "poisson-multi") return make_poisson_multi(spec.d, spec.a_star_seed);
  if (spec.kind == "heavy") return make_heavy_tailed(spec.nu);
  if (spec.kind == "mean-point") {
    return make_mean_estimation({MeanDistKind::PointMass, spec.mean_value, 0.0});
  }
  if (spec.kind == "mean-normal") {
    return make_mean_estimation({MeanDistKind::Normal, spec.mean_value, spec.mean_sigma});
  }
  throw std::invalid_argument("unknown problem kind: " + spec.kind);
}

std::string kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Poisson1D: return "poisson1d";
    case ProblemKind::PoissonMulti: return "poisson-multi";
    case ProblemKind::HeavyTailed1D: return "heavy";
    case ProblemKind::MeanEstimation1D: return "mean";
  }
  return "unknown";
}

SamplePoint sample(const NoisyProblem& problem, RandomState& rng) {
  switch (problem.kind) {
    case ProblemKind::Poisson1D: {
      const double x = static_cast<double>(rng.poisson(1.0));
      const double y = static_cast<double>(rng.poisson(1.0));
      return {x, y};
    }
    case ProblemKind::PoissonMulti: {
      SamplePoint z(problem.sample_dim);
      z[0] = static_cast<double>(rng.poisson(1.0));  // W
      double lin = 0.0;
      for (int i = 1; i < problem.dim; ++i) {
        z[i] = 2.0 * rng.uniform() - 1.0;  // X ~ U([-1,1]^{d-1})
        lin += problem.a_star[i - 1] * z[i];
      }
      // Conditional rate exp(a*.X), which makes theta_star stationary.
      z[problem.dim] = static_cast<double>(rng.poisson(std::exp(lin)));  // Y
      return z;
    }
    case ProblemKind::HeavyTailed1D: {
      const double w = rng.student_t(problem.nu);
      const double x = static_cast<double>(rng.poisson(1.0));
      const double y = static_cast<double>(rng.poisson(1.0));
      return {w, x, y};
    }
    case ProblemKind::MeanEstimation1D: {
      const MeanDist& d = problem.mean_dist;
      if (d.kind == MeanDistKind::PointMass) return {d.location};
      return {d.location + d.sigma * rng.normal()};
    }
  }
  throw std::logic_error("sample: unreachable");
}

double eval_f(const NoisyProblem& problem, std::span<const double> theta,
              std::span<const double> z) {
  check_dims(problem, theta, z);
  switch (problem.kind) {
    case ProblemKind::Poisson1D:
      return -z[1] * z[0] * theta[0] + std::exp(theta[0] * z[0]);
    case ProblemKind::PoissonMulti: {
      const auto regressor = z.first(problem.dim);
      const double lin = dot(theta, regressor);
      return -z[problem.dim] * lin + std::exp(lin);
    }
    case ProblemKind::HeavyTailed1D:
      return -z[2] * z[1] * theta[0] + std::exp(theta[0] * z[1]) + z[0] * theta[0];
    case ProblemKind::MeanEstimation1D:
      return theta[0] * theta[0] - 2.0 * theta[0] * z[0];
  }
  throw std::logic_error("eval_f: unreachable");
}

Vec eval_grad_f(const NoisyProblem& problem, std::span<const double> theta,
                std::span<const double> z) {
  check_dims(problem, theta, z);
  switch (problem.kind) {
    case ProblemKind::Poisson1D:
      return {-z[0] * z[1] + z[0] * std::exp(theta[0] * z[0])};
    case ProblemKind::PoissonMulti: {
      const auto regressor = z.first(problem.dim);
      const double scale = std::exp(dot(theta, regressor)) - z[problem.dim];
      Vec grad(problem.dim);
      for (int i = 0; i < problem.dim; ++i) grad[i] = regressor[i] * scale;
      return grad;
    }
    case ProblemKind::HeavyTailed1D:
      return {-z[2] * z[1] + z[1] * std::exp(theta[0] * z[1]) + z[0]};
    case ProblemKind::MeanEstimation1D:
      return {2.0 * theta[0] - 2.0 * z[0]};
  }
  throw std::logic_error("eval_grad_f: unreachable");
}

OracleValues oracle_poisson1d(double theta) {
  OracleValues out;
  const double et = std::exp(theta);
  out.value = -theta + std::exp(et - 1.0);
  out.grad = -1.0 + std::exp(et + theta - 1.0);
  out.hess = (et + 1.0) * std::exp(et + theta - 1.0);
  return out;
}

}  // namespace raopt
