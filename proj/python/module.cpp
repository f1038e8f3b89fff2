#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "raopt/checks.hpp"
#include "raopt/experiments.hpp"
#include "raopt/problems.hpp"
#include "raopt/retrospective.hpp"
#include "raopt/rng.hpp"
#include "raopt/saa.hpp"

namespace py = pybind11;
using namespace raopt;

PYBIND11_MODULE(raopt, m) {
  m.doc() = "Budget-constrained noisy optimization: staged gradient descent "
            "with backtracking line search on sample averages";

  py::enum_<StopReason>(m, "StopReason")
      .value("TOLERANCE_MET", StopReason::ToleranceMet)
      .value("BUDGET_EXHAUSTED", StopReason::BudgetExhausted)
      .value("NEVER_STARTED", StopReason::NeverStarted);

  py::class_<RandomState>(m, "RandomState")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", &RandomState::uniform)
      .def("normal", &RandomState::normal)
      .def("poisson", &RandomState::poisson, py::arg("mean"))
      .def("student_t", &RandomState::student_t, py::arg("dof"));

  py::class_<NoisyProblem>(m, "NoisyProblem")
      .def_property_readonly("kind", [](const NoisyProblem& p) { return kind_name(p.kind); })
      .def_readonly("dim", &NoisyProblem::dim)
      .def_readonly("sample_dim", &NoisyProblem::sample_dim)
      .def_readonly("theta_star", &NoisyProblem::theta_star)
      .def("sample", [](const NoisyProblem& p, RandomState& rng) { return sample(p, rng); },
           py::arg("rng"))
      .def("f", [](const NoisyProblem& p, const Vec& theta, const Vec& z) {
            return eval_f(p, theta, z);
          }, py::arg("theta"), py::arg("z"))
      .def("grad_f", [](const NoisyProblem& p, const Vec& theta, const Vec& z) {
            return eval_grad_f(p, theta, z);
          }, py::arg("theta"), py::arg("z"));

  m.def("poisson1d", &make_poisson1d);
  m.def("poisson_multi", &make_poisson_multi, py::arg("d"), py::arg("a_star_seed"));
  m.def("heavy_tailed", &make_heavy_tailed, py::arg("nu"));
  m.def("mean_point_mass", [](double value) {
    return make_mean_estimation({MeanDistKind::PointMass, value, 0.0});
  }, py::arg("value"));
  m.def("mean_normal", [](double mu, double sigma) {
    return make_mean_estimation({MeanDistKind::Normal, mu, sigma});
  }, py::arg("mu"), py::arg("sigma"));

  m.def("oracle_poisson1d", [](double theta) {
    const OracleValues v = oracle_poisson1d(theta);
    return py::make_tuple(v.value, v.grad, v.hess);
  }, py::arg("theta"), "Closed-form (F, F', F'') for the 1-d Poisson objective");

  py::class_<RaConfig>(m, "RaConfig")
      .def(py::init<>())
      .def_readwrite("theta0", &RaConfig::theta0)
      .def_readwrite("budget", &RaConfig::budget)
      .def_readwrite("alpha_prime", &RaConfig::alpha_prime)
      .def_readwrite("delta", &RaConfig::delta)
      .def_readwrite("max_stages", &RaConfig::max_stages)
      .def_readwrite("kappa", &RaConfig::kappa)
      .def_readwrite("tau", &RaConfig::tau)
      .def_readwrite("beta", &RaConfig::beta)
      .def_readwrite("min_n", &RaConfig::min_n)
      .def_readwrite("cost_eval", &RaConfig::cost_eval)
      .def_readwrite("cost_grad", &RaConfig::cost_grad)
      .def_readwrite("final_stage_tau_zero", &RaConfig::final_stage_tau_zero);

  py::class_<StageSchedule>(m, "StageSchedule")
      .def_readonly("j", &StageSchedule::j)
      .def_readonly("gamma", &StageSchedule::gamma)
      .def_readonly("n", &StageSchedule::n)
      .def_readonly("tau", &StageSchedule::tau);

  py::class_<GdBlsResult>(m, "GdBlsResult")
      .def_readonly("theta", &GdBlsResult::theta)
      .def_readonly("remaining", &GdBlsResult::remaining)
      .def_readonly("iterations", &GdBlsResult::iterations)
      .def_readonly("stop_reason", &GdBlsResult::stop_reason)
      .def_readonly("step_sizes", &GdBlsResult::step_sizes)
      .def_readonly("fn_trace", &GdBlsResult::fn_trace)
      .def_readonly("grad_squared_norms", &GdBlsResult::grad_squared_norms)
      .def_readonly("value_evals", &GdBlsResult::value_evals)
      .def_readonly("grad_evals", &GdBlsResult::grad_evals)
      .def_readonly("n", &GdBlsResult::n);

  py::class_<StageRecord>(m, "StageRecord")
      .def_readonly("schedule", &StageRecord::schedule)
      .def_readonly("result", &StageRecord::result);

  py::class_<RaResult>(m, "RaResult")
      .def_readonly("theta_hat", &RaResult::theta_hat)
      .def_readonly("j_used", &RaResult::j_used)
      .def_readonly("stage_records", &RaResult::stage_records)
      .def_readonly("total_consumed", &RaResult::total_consumed);

  m.def("schedule", &schedule, py::arg("budget"), py::arg("config"), py::arg("j"));
  m.def("delta_in_guarantee_range", &delta_in_guarantee_range, py::arg("delta"),
        py::arg("alpha_prime"));
  m.def("run", &run, py::arg("problem"), py::arg("config"), py::arg("seed"),
        "One staged optimization run");
  m.def("single_stage_saa", &single_stage_saa, py::arg("problem"), py::arg("theta0"),
        py::arg("budget"), py::arg("alpha"), py::arg("beta") = 0.5, py::arg("c_n") = 1.0,
        py::arg("seed") = 0, py::arg("min_n") = 100, py::arg("cost_eval") = 1,
        py::arg("cost_grad") = 1);
  m.def("gamma_identity_residual", &gamma_identity_residual, py::arg("delta"),
        py::arg("alpha_prime"), py::arg("j"));

  py::class_<ReplicationRecord>(m, "ReplicationRecord")
      .def_readonly("budget", &ReplicationRecord::budget)
      .def_readonly("rep", &ReplicationRecord::rep)
      .def_readonly("seed", &ReplicationRecord::seed)
      .def_readonly("error", &ReplicationRecord::error)
      .def_readonly("j_used", &ReplicationRecord::j_used)
      .def_readonly("consumed", &ReplicationRecord::consumed);

  py::class_<ReplicationSummary>(m, "ReplicationSummary")
      .def_readonly("budget", &ReplicationSummary::budget)
      .def_readonly("mean_error", &ReplicationSummary::mean_error)
      .def_readonly("trimmed_error", &ReplicationSummary::trimmed_error)
      .def_readonly("sd_error", &ReplicationSummary::sd_error)
      .def_readonly("mean_jb", &ReplicationSummary::mean_jb)
      .def_readonly("records", &ReplicationSummary::records);

  m.def("sweep",
        [](const NoisyProblem& problem, const std::vector<long long>& budget_grid,
           int replications, const RaConfig& ra, double trim_fraction,
           std::uint64_t base_seed, int jobs) {
          SweepConfig cfg;
          cfg.problem = problem;
          cfg.budget_grid = budget_grid;
          cfg.replications = replications;
          cfg.ra = ra;
          cfg.trim_fraction = trim_fraction;
          cfg.base_seed = base_seed;
          cfg.jobs = jobs;
          return sweep(cfg);
        },
        py::arg("problem"), py::arg("budget_grid"), py::arg("replications"),
        py::arg("config"), py::arg("trim_fraction") = 0.1, py::arg("base_seed") = 0,
        py::arg("jobs") = 1);

  m.def("trimmed_mean", &trimmed_mean, py::arg("values"), py::arg("fraction"));
  m.def("pearson_corr", [](const std::vector<double>& xs, const std::vector<double>& ys) {
    return pearson_corr(xs, ys);
  }, py::arg("xs"), py::arg("ys"));
  m.def("loglog_slope",
        [](const std::vector<long long>& budgets, const std::vector<double>& errors) {
          return loglog_slope(budgets, errors);
        },
        py::arg("budgets"), py::arg("errors"));
  m.def("rho_jb", &rho_jb, py::arg("summaries"));

  m.def("run_checks", [](std::uint64_t seed) {
    py::list out;
    for (const CheckResult& r : run_all_checks(seed)) {
      out.append(py::make_tuple(r.name, r.passed, r.detail));
    }
    return out;
  }, py::arg("seed") = 0, "Run all property-check suites; returns (name, passed, detail)");
}
