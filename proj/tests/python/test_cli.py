"""End-to-end checks of the raopt command-line tool (path in $RAOPT_CLI)."""

import os
import subprocess

import pytest

CLI = os.environ.get("RAOPT_CLI")
if not CLI or not os.path.exists(CLI):
    pytest.skip("RAOPT_CLI not set", allow_module_level=True)


def invoke(*args, check=True):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} failed rc={proc.returncode}\n{proc.stdout}\n{proc.stderr}")
    return proc


def test_run_summary_line():
    out = invoke("--seed", "7", "run", "--problem", "poisson1d", "--budget", "200000",
                 "--delta", "0.95", "--alpha", "1").stdout
    assert "theta_hat =" in out
    assert "stages (J_B) =" in out
    assert "consumed =" in out


def test_run_zero_budget_reports_one_stage():
    out = invoke("run", "--problem", "poisson1d", "--budget", "0").stdout
    assert "stages (J_B) = 1" in out
    assert "never-started" in out
    assert "theta_hat = 1" in out


def test_missing_problem_is_a_usage_error():
    proc = invoke("run", "--budget", "1000", check=False)
    assert proc.returncode != 0


def test_duplicate_budgets_rejected():
    proc = invoke("sweep", "--problem", "poisson1d", "--budgets", "1000", "1000",
                  "--reps", "2", check=False)
    assert proc.returncode != 0


def test_schedule_table():
    out = invoke("schedule", "--budget", "1000000", "--delta", "0.51", "--alpha", "1",
                 "--rows", "3").stdout
    lines = [line for line in out.splitlines() if line.strip()]
    assert lines[0].split() == ["j", "gamma_j", "n_j", "tau_j"]
    first = lines[1].split()
    assert first[0] == "1"
    assert float(first[1]) == pytest.approx(0.49)
    assert first[2] == "871"
    assert float(first[3]) == pytest.approx(3.3884e-2, rel=1e-4)


def test_schedule_warns_outside_guarantee_range(tmp_path):
    proc = invoke("schedule", "--budget", "1000", "--delta", "0.3", "--alpha", "1")
    assert "warning" in proc.stderr


def test_sweep_writes_byte_identical_csvs(tmp_path):
    args = ("--seed", "3", "sweep", "--problem", "poisson1d", "--budgets", "2000", "8000",
            "--reps", "3", "--delta", "0.95")
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    invoke(*args, "--out-dir", str(out_a))
    invoke(*args, "--out-dir", str(out_b))
    for name in ("summary.csv", "replications.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
    header = (out_a / "summary.csv").read_text().splitlines()[0]
    assert header == "B,mean_error,trimmed_error,sd_error,mean_jb,replications"
    header = (out_a / "replications.csv").read_text().splitlines()[0]
    assert header == "B,rep,seed,error,j_used,consumed"


def test_sweep_single_replication_emits_nan_sd(tmp_path):
    invoke("sweep", "--problem", "poisson1d", "--budgets", "2000", "8000", "--reps", "1",
           "--delta", "0.95", "--out-dir", str(tmp_path))
    rows = (tmp_path / "summary.csv").read_text().splitlines()[1:]
    for row in rows:
        assert row.split(",")[3] == "nan"


def test_stage_trace_csv(tmp_path):
    trace = tmp_path / "stages.csv"
    invoke("--seed", "5", "run", "--problem", "poisson1d", "--budget", "50000",
           "--delta", "0.95", "--stage-csv", str(trace))
    lines = trace.read_text().splitlines()
    assert lines[0] == "stage,gamma,n,tau,iterations,value_evals,grad_evals,remaining,stop_reason"
    assert len(lines) >= 2


def test_check_subcommand():
    out = invoke("check", "--only", "gamma").stdout
    assert "[ok] gamma-identity" in out
    proc = invoke("check", "--only", "budget", "--inject-budget-fault", check=False)
    assert proc.returncode != 0


def test_help_lists_subcommands():
    out = invoke("--help").stdout
    for sub in ("run", "sweep", "schedule", "check"):
        assert sub in out
