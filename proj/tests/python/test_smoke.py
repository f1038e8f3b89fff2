"""Smoke tests for the raopt python module (built by CMake / scikit-build-core)."""

import math

import pytest

raopt = pytest.importorskip("raopt")


def test_oracle_closed_form():
    value, grad, hess = raopt.oracle_poisson1d(0.0)
    assert value == pytest.approx(1.0)
    assert grad == 0.0
    assert hess == pytest.approx(2.0)
    value1, _, _ = raopt.oracle_poisson1d(1.0)
    assert value1 == pytest.approx(4.5749415247608806, rel=1e-12)


def test_problem_eval_and_sampling():
    problem = raopt.poisson1d()
    assert problem.dim == 1
    assert problem.theta_star == [0.0]
    assert problem.f([0.0], [2.0, 3.0]) == 1.0
    assert problem.grad_f([0.0], [2.0, 3.0]) == [-4.0]

    rng_a = raopt.RandomState(7)
    rng_b = raopt.RandomState(7)
    for _ in range(50):
        assert problem.sample(rng_a) == problem.sample(rng_b)


def test_schedule_matches_hand_computation():
    cfg = raopt.RaConfig()
    cfg.theta0 = [1.0]
    cfg.delta = 0.51
    cfg.alpha_prime = 1.0
    sched = raopt.schedule(10**6, cfg, 1)
    assert sched.gamma == pytest.approx(0.49)
    assert sched.n == 871
    assert sched.tau == pytest.approx(0.033884415613920255, rel=1e-12)


def test_run_is_deterministic_and_contracts():
    problem = raopt.poisson1d()
    cfg = raopt.RaConfig()
    cfg.theta0 = [1.0]
    cfg.budget = 50_000
    cfg.delta = 0.95
    first = raopt.run(problem, cfg, seed=11)
    second = raopt.run(problem, cfg, seed=11)
    assert first.theta_hat == second.theta_hat
    assert first.j_used == second.j_used >= 1
    assert abs(first.theta_hat[0]) < 1.0  # closer to theta* = 0 than theta0 = 1
    assert first.total_consumed <= cfg.budget


def test_single_stage_baseline():
    problem = raopt.poisson1d()
    res = raopt.single_stage_saa(problem, [1.0], 10**6, 1.0, seed=3)
    assert res.n == 1000
    assert res.stop_reason == raopt.StopReason.BUDGET_EXHAUSTED
    assert abs(res.theta[0]) < 0.5


def test_gamma_identity_residual():
    assert raopt.gamma_identity_residual(0.6, 1.0, 2) <= 1e-15
    for j in range(2, 30):
        assert raopt.gamma_identity_residual(0.95, 1.0, j) <= 1e-12


def test_statistics_helpers():
    assert raopt.trimmed_mean(list(map(float, range(1, 11))), 0.1) == 5.5
    assert raopt.pearson_corr([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]) == pytest.approx(1.0)
    budgets = [100, 1000, 10000]
    errors = [10.0 / math.sqrt(b) for b in budgets]
    assert raopt.loglog_slope(budgets, errors) == pytest.approx(-0.5)


def test_small_sweep():
    problem = raopt.poisson1d()
    cfg = raopt.RaConfig()
    cfg.theta0 = [1.0]
    cfg.delta = 0.95
    summaries = raopt.sweep(problem, [2000, 20000], replications=4, config=cfg, base_seed=5)
    assert len(summaries) == 2
    assert summaries[0].mean_error > 0.0
    assert all(s.mean_jb >= 1.0 for s in summaries)
    again = raopt.sweep(problem, [2000, 20000], replications=4, config=cfg, base_seed=5)
    assert [s.mean_error for s in summaries] == [s.mean_error for s in again]
