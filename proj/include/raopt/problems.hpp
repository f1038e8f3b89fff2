#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "raopt/rng.hpp"
#include "raopt/vec.hpp"

namespace raopt {

/// One realization of the noise variable. Layout is fixed per problem kind;
/// see the sample() documentation below.
using SamplePoint = Vec;

enum class ProblemKind {
  Poisson1D,        // z = (X, Y), X,Y ~ Poisson(1) independent
  PoissonMulti,     // z = (W, X_1..X_{d-1}, Y); regressor vector is (W, X)
  HeavyTailed1D,    // z = (W, X, Y), W ~ t_nu
  MeanEstimation1D  // z = (Z) scalar
};

enum class MeanDistKind { PointMass, Normal };

struct MeanDist {
  MeanDistKind kind = MeanDistKind::PointMass;
  double location = 0.0;  // point-mass value / normal mean
  double sigma = 1.0;     // normal only
};

/// A sampled objective: dimension, sampler, pointwise f and grad f, and the
/// known optimum (used for error reporting only, never by the optimizer).
struct NoisyProblem {
  ProblemKind kind = ProblemKind::Poisson1D;
  int dim = 1;
  int sample_dim = 2;
  Vec theta_star;

  Vec a_star;           // PoissonMulti: regression coefficients, size dim-1
  double nu = 0.0;      // HeavyTailed1D: t degrees of freedom
  MeanDist mean_dist;   // MeanEstimation1D
};

NoisyProblem make_poisson1d();
NoisyProblem make_poisson_multi(int d, std::uint64_t a_star_seed);
NoisyProblem make_heavy_tailed(double nu);
NoisyProblem make_mean_estimation(MeanDist dist);

/// Parsed form of the CLI problem flags.
struct ProblemSpec {
  std::string kind = "poisson1d";  // poisson1d | poisson-multi | heavy | mean-point | mean-normal
  int d = 20;                      // poisson-multi
  std::uint64_t a_star_seed = 1;   // poisson-multi
  double nu = 1.501;               // heavy
  double mean_value = 0.0;         // mean-point value / mean-normal mu
  double mean_sigma = 1.0;         // mean-normal
};

NoisyProblem make_problem(const ProblemSpec& spec);

std::string kind_name(ProblemKind kind);

/// Draws one i.i.d. realization, advancing rng deterministically.
SamplePoint sample(const NoisyProblem& problem, RandomState& rng);

/// Pointwise objective f(theta, z). Overflowing exponentials propagate as
/// +infinity; callers treat non-finite values per the line-search rules.
double eval_f(const NoisyProblem& problem, std::span<const double> theta,
              std::span<const double> z);

/// Pointwise gradient of f with respect to theta.
Vec eval_grad_f(const NoisyProblem& problem, std::span<const double> theta,
                std::span<const double> z);

struct OracleValues {
  double value = 0.0;
  double grad = 0.0;
  double hess = 0.0;
};

/// Closed-form objective for the one-dimensional Poisson problem:
///   F(t)  = -t + exp(exp(t) - 1)
///   F'(t) = -1 + exp(exp(t) + t - 1)
///   F''(t) = (exp(t) + 1) exp(exp(t) + t - 1)
OracleValues oracle_poisson1d(double theta);

}  // namespace raopt
