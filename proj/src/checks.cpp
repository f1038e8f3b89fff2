#include "raopt/checks.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "raopt/experiments.hpp"
#include "raopt/gd_bls.hpp"
#include "raopt/problems.hpp"
#include "raopt/retrospective.hpp"
#include "raopt/rng.hpp"
#include "raopt/saa.hpp"

namespace raopt {

namespace {

std::string str(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Vec random_theta_in_ball(RandomState& rng, int dim, double radius) {
  Vec theta(dim);
  const double scale = radius / std::sqrt(static_cast<double>(dim));
  for (double& t : theta) t = (2.0 * rng.uniform() - 1.0) * scale;
  return theta;
}

// --- small dense helpers for the quadratic test problems ---

struct Quadratic {
  int dim = 0;
  std::vector<double> matrix;  // row-major, symmetric
  double lambda_max = 0.0;     // exact by construction

  double value(std::span<const double> x) const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      double row = 0.0;
      for (int j = 0; j < dim; ++j) row += matrix[i * dim + j] * x[j];
      s += x[i] * row;
    }
    return 0.5 * s;
  }

  Vec grad(std::span<const double> x) const {
    Vec g(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
      double row = 0.0;
      for (int j = 0; j < dim; ++j) row += matrix[i * dim + j] * x[j];
      g[i] = row;
    }
    return g;
  }
};

// SPD matrix with a known spectrum: A = Q diag(lambda) Q^T with Q from
// twice-applied Gram-Schmidt on a random Gaussian matrix.
Quadratic random_spd_quadratic(RandomState& rng, int dim) {
  std::vector<double> q(dim * dim);
  for (double& v : q) v = rng.normal();
  auto col = [&](int j, int i) -> double& { return q[i * dim + j]; };
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < j; ++k) {
        double proj = 0.0;
        for (int i = 0; i < dim; ++i) proj += col(j, i) * col(k, i);
        for (int i = 0; i < dim; ++i) col(j, i) -= proj * col(k, i);
      }
      double norm_sq = 0.0;
      for (int i = 0; i < dim; ++i) norm_sq += col(j, i) * col(j, i);
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (int i = 0; i < dim; ++i) col(j, i) *= inv;
    }
  }

  Quadratic quad;
  quad.dim = dim;
  quad.matrix.assign(dim * dim, 0.0);
  for (int k = 0; k < dim; ++k) {
    const double lambda = 1.0 + 49.0 * rng.uniform();  // in [1, 50]
    quad.lambda_max = std::max(quad.lambda_max, lambda);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        quad.matrix[i * dim + j] += lambda * col(k, i) * col(k, j);
      }
    }
  }
  return quad;
}

bool is_power_of_beta(double step, double beta) {
  // Reconstruct by the same repeated multiplication the line search uses.
  double w = 1.0;
  for (int k = 0; k < 4096 && w >= step; ++k) {
    if (w == step) return true;
    w *= beta;
  }
  return false;
}

}  // namespace

CheckResult check_gradient_consistency(std::uint64_t seed, int pairs) {
  CheckResult out{"gradient-consistency", true, ""};
  const double h = 1e-6;
  const double tol = 1e-4;
  const std::vector<NoisyProblem> problems = {
      make_poisson1d(),
      make_poisson_multi(5, derive_seed(seed, 11)),
      make_heavy_tailed(1.501),
      make_mean_estimation({MeanDistKind::Normal, 1.0, 2.0}),
  };
  int checked = 0;
  for (std::size_t pi = 0; pi < problems.size(); ++pi) {
    const NoisyProblem& problem = problems[pi];
    RandomState rng(derive_seed(seed, 17, pi));
    for (int trial = 0; trial < pairs; ++trial) {
      Vec theta = random_theta_in_ball(rng, problem.dim, 3.0);
      const SamplePoint z = sample(problem, rng);
      if (!std::isfinite(eval_f(problem, theta, z))) continue;
      const Vec grad = eval_grad_f(problem, theta, z);
      for (int i = 0; i < problem.dim; ++i) {
        if (!std::isfinite(grad[i])) continue;
        Vec tp = theta;
        Vec tm = theta;
        tp[i] += h;
        tm[i] -= h;
        const double fp = eval_f(problem, tp, z);
        const double fm = eval_f(problem, tm, z);
        if (!std::isfinite(fp) || !std::isfinite(fm)) continue;
        const double fd = (fp - fm) / (2.0 * h);
        const double rel = std::abs(fd - grad[i]) / std::max(1.0, std::abs(grad[i]));
        ++checked;
        if (!(rel <= tol)) {
          out.passed = false;
          out.detail = "kind=" + kind_name(problem.kind) + " component=" + std::to_string(i) +
                       " analytic=" + str(grad[i]) + " fd=" + str(fd) + " rel=" + str(rel);
          return out;
        }
      }
    }
  }
  out.detail = std::to_string(checked) + " finite-difference comparisons within 1e-4";
  return out;
}

CheckResult check_descent(std::uint64_t seed, int runs) {
  CheckResult out{"descent", true, ""};
  const double betas[] = {0.3, 0.5, 0.8};
  int steps_checked = 0;
  for (int r = 0; r < runs; ++r) {
    RandomState rng(derive_seed(seed, 23, static_cast<std::uint64_t>(r)));
    const NoisyProblem problem =
        (r % 2 == 0) ? make_poisson1d()
                     : make_mean_estimation({MeanDistKind::Normal, 1.0, 2.0});
    const long long budget = 500 + static_cast<long long>(rng.uniform() * 50000);
    const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform() * 195);
    const double beta = betas[r % 3];
    const double tau = (r % 4 == 0) ? 0.05 : 0.0;
    Vec theta0(problem.dim);
    for (double& t : theta0) t = 2.0 * (2.0 * rng.uniform() - 1.0);

    SampleStream stream(problem, derive_seed(seed, 29, static_cast<std::uint64_t>(r)));
    BudgetMeter meter(budget);
    AveragedObjective objective(stream, n);
    const GdBlsResult res = run_budgeted(objective, theta0, meter, {beta, tau});

    for (std::size_t t = 0; t + 1 < res.fn_trace.size(); ++t) {
      ++steps_checked;
      const bool decrease = sufficient_decrease(res.fn_trace[t + 1], res.fn_trace[t],
                                                res.step_sizes[t], res.grad_squared_norms[t]);
      if (!decrease || res.fn_trace[t + 1] > res.fn_trace[t]) {
        out.passed = false;
        out.detail = "run " + std::to_string(r) + " step " + std::to_string(t) +
                     ": trace " + str(res.fn_trace[t]) + " -> " + str(res.fn_trace[t + 1]);
        return out;
      }
      if (!(res.step_sizes[t] > 0.0 && res.step_sizes[t] <= 1.0) ||
          !is_power_of_beta(res.step_sizes[t], beta)) {
        out.passed = false;
        out.detail = "run " + std::to_string(r) + " step " + std::to_string(t) +
                     ": step size " + str(res.step_sizes[t]) + " is not a power of beta";
        return out;
      }
    }
    if (!res.fn_trace.empty() && res.fn_trace.back() > res.fn_trace.front()) {
      out.passed = false;
      out.detail = "run " + std::to_string(r) + ": returned value worse than start";
      return out;
    }
  }
  out.detail = std::to_string(steps_checked) + " accepted steps satisfy the decrease test";
  return out;
}

CheckResult check_budget_conservation(std::uint64_t seed, int runs, bool inject_fault) {
  CheckResult out{"budget-conservation", true, ""};
  for (int r = 0; r < runs; ++r) {
    RandomState rng(derive_seed(seed, 31, static_cast<std::uint64_t>(r)));
    const NoisyProblem problem =
        (r % 2 == 0) ? make_poisson1d()
                     : make_mean_estimation({MeanDistKind::Normal, 0.5, 1.5});
    const long long budget = static_cast<long long>(rng.uniform() * 3000);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 49);
    const long long cost_eval = 1 + static_cast<long long>(rng.uniform() * 3);
    const long long cost_grad = 1 + static_cast<long long>(rng.uniform() * 3);
    const double tau = (r % 3 == 0) ? 0.5 * rng.uniform() : 0.0;
    Vec theta0(problem.dim);
    for (double& t : theta0) t = 2.0 * rng.uniform() - 1.0;

    SampleStream stream(problem, derive_seed(seed, 37, static_cast<std::uint64_t>(r)));
    BudgetMeter meter(budget, cost_eval, cost_grad);
    AveragedObjective objective(stream, n);
    const GdBlsResult res = run_budgeted(objective, theta0, meter, {0.5, tau});

    if (inject_fault && r == 0) {
      meter.charge_evals(1);  // burned unit a correct run never records
    }

    if (meter.remaining() + meter.consumed() != budget || res.remaining != meter.remaining()) {
      out.passed = false;
      out.detail = "run " + std::to_string(r) + ": remaining " +
                   std::to_string(meter.remaining()) + " + consumed " +
                   std::to_string(meter.consumed()) + " != budget " + std::to_string(budget);
      return out;
    }
    const long long expected = res.value_evals * res.n * cost_eval +
                               res.grad_evals * res.n * cost_grad;
    if (meter.consumed() != expected) {
      out.passed = false;
      out.detail = "run " + std::to_string(r) + ": consumed " +
                   std::to_string(meter.consumed()) + " != counted " + std::to_string(expected);
      return out;
    }
  }

  // Refused charges must leave the ledger untouched.
  BudgetMeter small(9);
  if (small.charge_evals(10) || small.remaining() != 9 || small.consumed() != 0) {
    out.passed = false;
    out.detail = "refused charge mutated the ledger";
    return out;
  }
  out.detail = std::to_string(runs) + " randomized runs conserve the budget exactly";
  return out;
}

CheckResult check_deterministic_gd_bounds(std::uint64_t seed, int matrices, int max_dim,
                                          long long iterations) {
  CheckResult out{"gd-bls-bounds", true, ""};
  const double betas[] = {0.3, 0.5, 0.8};
  const double cushion = 1e-12;
  for (int m = 0; m < matrices; ++m) {
    RandomState rng(derive_seed(seed, 41, static_cast<std::uint64_t>(m)));
    const int dim = 2 + static_cast<int>(rng.uniform() * (max_dim - 1));
    const Quadratic quad = random_spd_quadratic(rng, dim);
    Vec x0(dim);
    for (double& v : x0) v = 2.0 * (2.0 * rng.uniform() - 1.0);
    const double start_sq = squared_norm(x0);  // x* = 0, g(x*) = 0

    for (const double beta : betas) {
      const Objective g = [&](std::span<const double> x) { return quad.value(x); };
      const GradientFn dg = [&](std::span<const double> x) { return quad.grad(x); };
      const DeterministicRun run = run_deterministic(g, dg, x0, iterations, beta);

      const double floor = beta / quad.lambda_max * (1.0 - cushion);
      for (std::size_t t = 0; t < run.step_sizes.size(); ++t) {
        // Once g falls below the normal floating-point range the iterate has
        // converged to machine zero and the Armijo comparison is pure
        // underflow noise; the step floor is only meaningful before that.
        if (quad.value(run.trajectory[t]) < std::numeric_limits<double>::min()) continue;
        if (!(run.step_sizes[t] >= floor)) {
          out.passed = false;
          out.detail = "matrix " + std::to_string(m) + " beta " + str(beta) + " step " +
                       std::to_string(t + 1) + ": v=" + str(run.step_sizes[t]) +
                       " < beta/lambda_max=" + str(beta / quad.lambda_max);
          return out;
        }
      }
      for (long long T = 1; T <= iterations; ++T) {
        const double bound = start_sq * quad.lambda_max / (2.0 * beta * static_cast<double>(T));
        const double got = quad.value(run.trajectory[static_cast<std::size_t>(T)]);
        if (!(got <= bound * (1.0 + cushion))) {
          out.passed = false;
          out.detail = "matrix " + std::to_string(m) + " beta " + str(beta) + " T " +
                       std::to_string(T) + ": g(x_T)=" + str(got) + " > bound " + str(bound);
          return out;
        }
      }
    }
  }
  out.detail = std::to_string(matrices) + " quadratics meet the step floor and 1/T bound";
  return out;
}

CheckResult check_gamma_identity() {
  CheckResult out{"gamma-identity", true, ""};
  const double alphas[] = {0.25, 0.5, 0.75, 1.0};
  int checked = 0;
  for (const double alpha : alphas) {
    const double lower = 2.0 * alpha / (1.0 + 3.0 * alpha);
    for (int dstep = 0; dstep <= 29; ++dstep) {
      const double delta = 0.41 + 0.02 * dstep;
      if (!(delta > lower && delta < 1.0)) continue;
      for (long long j = 2; j <= 50; ++j) {
        const double residual = gamma_identity_residual(delta, alpha, j);
        ++checked;
        if (!(residual <= 1e-12)) {
          out.passed = false;
          out.detail = "delta=" + str(delta) + " alpha'=" + str(alpha) +
                       " j=" + std::to_string(j) + " residual=" + str(residual);
          return out;
        }
      }
    }
  }
  out.detail = std::to_string(checked) + " grid points with residual <= 1e-12";
  return out;
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed, bool inject_budget_fault) {
  return {
      check_gradient_consistency(seed),
      check_descent(seed),
      check_budget_conservation(seed, 200, inject_budget_fault),
      check_deterministic_gd_bounds(seed),
      check_gamma_identity(),
  };
}

}  // namespace raopt
