#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "svardag/acyclicity.hpp"
#include "svardag/baseline.hpp"
#include "svardag/metrics.hpp"
#include "svardag/model.hpp"
#include "svardag/simulate.hpp"
#include "svardag/solver.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;

namespace {

using namespace svardag;

struct PyResult {
  Matrix w_hat;
  Matrix a_hat;
  Matrix w_estimate;
  double h_final = 0.0;
  std::string termination;
  std::vector<OuterRecord> trace;
  int cycle_edges_removed = 0;
  int negative_edges_clamped = 0;
};

PyResult wrap_result(SolverResult&& r) {
  PyResult out;
  out.w_hat = std::move(r.w_hat.w);
  out.a_hat = std::move(r.a_hat.stacked);
  out.w_estimate = std::move(r.w_estimate);
  out.h_final = r.h_final;
  out.termination = r.termination == Termination::converged ? "converged" : "max_outer_reached";
  out.trace = std::move(r.trace);
  out.cycle_edges_removed = r.cycle_edges_removed;
  out.negative_edges_clamped = r.negative_edges_clamped;
  return out;
}

LaggedDesign design_from(const Matrix& x, int p) {
  return build_lagged_design(TimeSeries(x), p);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Instantaneous-DAG and lag-coefficient estimation from time series";

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("s", &SolverConfig::s)
      .def_readwrite("lambda_w", &SolverConfig::lambda_w)
      .def_readwrite("lambda_a", &SolverConfig::lambda_a)
      .def_readwrite("alpha0", &SolverConfig::alpha0)
      .def_readwrite("c0", &SolverConfig::c0)
      .def_readwrite("beta", &SolverConfig::beta)
      .def_readwrite("gamma", &SolverConfig::gamma)
      .def_readwrite("max_outer", &SolverConfig::max_outer)
      .def_readwrite("h_tol", &SolverConfig::h_tol)
      .def_readwrite("inner_tol", &SolverConfig::inner_tol)
      .def_readwrite("max_inner", &SolverConfig::max_inner)
      .def_readwrite("tau", &SolverConfig::tau)
      .def_readwrite("signed_a", &SolverConfig::signed_a)
      .def_readwrite("seed", &SolverConfig::seed);

  py::class_<BaselineConfig>(m, "BaselineConfig")
      .def(py::init<>())
      .def_readwrite("lambda_w", &BaselineConfig::lambda_w)
      .def_readwrite("lambda_a", &BaselineConfig::lambda_a)
      .def_readwrite("alpha0", &BaselineConfig::alpha0)
      .def_readwrite("c0", &BaselineConfig::c0)
      .def_readwrite("beta", &BaselineConfig::beta)
      .def_readwrite("gamma", &BaselineConfig::gamma)
      .def_readwrite("max_outer", &BaselineConfig::max_outer)
      .def_readwrite("h_tol", &BaselineConfig::h_tol)
      .def_readwrite("inner_tol", &BaselineConfig::inner_tol)
      .def_readwrite("max_inner", &BaselineConfig::max_inner)
      .def_readwrite("tau", &BaselineConfig::tau)
      .def_readwrite("seed", &BaselineConfig::seed);

  py::class_<OuterRecord>(m, "OuterRecord")
      .def_readonly("outer", &OuterRecord::outer)
      .def_readonly("score", &OuterRecord::score)
      .def_readonly("h", &OuterRecord::h)
      .def_readonly("alpha", &OuterRecord::alpha)
      .def_readonly("c", &OuterRecord::c)
      .def_readonly("inner_iterations", &OuterRecord::inner_iterations)
      .def_readonly("lagrangian_start", &OuterRecord::lagrangian_start)
      .def_readonly("lagrangian_end", &OuterRecord::lagrangian_end);

  py::class_<PyResult>(m, "SolverResult")
      .def_readonly("w_hat", &PyResult::w_hat)
      .def_readonly("a_hat", &PyResult::a_hat)
      .def_readonly("w_estimate", &PyResult::w_estimate)
      .def_readonly("h_final", &PyResult::h_final)
      .def_readonly("termination", &PyResult::termination)
      .def_readonly("trace", &PyResult::trace)
      .def_readonly("cycle_edges_removed", &PyResult::cycle_edges_removed)
      .def_readonly("negative_edges_clamped", &PyResult::negative_edges_clamped);

  py::class_<SvarmSpec>(m, "SvarmSpec")
      .def(py::init<>())
      .def_readwrite("n", &SvarmSpec::n)
      .def_readwrite("p", &SvarmSpec::p)
      .def_readwrite("avg_degree_w", &SvarmSpec::avg_degree_w)
      .def_readwrite("avg_degree_a", &SvarmSpec::avg_degree_a)
      .def_readwrite("weight_low", &SvarmSpec::weight_low)
      .def_readwrite("weight_high", &SvarmSpec::weight_high)
      .def_readwrite("decay_rate", &SvarmSpec::decay_rate)
      .def_readwrite("noise_sigma", &SvarmSpec::noise_sigma)
      .def_readwrite("t", &SvarmSpec::t)
      .def_readwrite("burn_in", &SvarmSpec::burn_in)
      .def_readwrite("seed", &SvarmSpec::seed);

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("nfe_w", &MetricsReport::nfe_w)
      .def_readonly("nfe_a", &MetricsReport::nfe_a)
      .def_readonly("f1_w", &MetricsReport::f1_w)
      .def_readonly("f1_a", &MetricsReport::f1_a)
      .def_readonly("precision_w", &MetricsReport::precision_w)
      .def_readonly("recall_w", &MetricsReport::recall_w)
      .def_readonly("precision_a", &MetricsReport::precision_a)
      .def_readonly("recall_a", &MetricsReport::recall_a);

  m.def(
      "simulate",
      [](const SvarmSpec& spec) {
        GroundTruth truth = simulate_svarm(spec);
        return py::make_tuple(truth.w_true.w, truth.a_true.stacked, truth.x.x, truth.z);
      },
      py::arg("spec"), "Returns (w_true, a_true_stacked, x, z)");

  m.def(
      "learn",
      [](const Matrix& x, int p, const SolverConfig& cfg) {
        return wrap_result(learn(design_from(x, p), cfg));
      },
      py::arg("x"), py::arg("p"), py::arg("config") = SolverConfig());

  m.def(
      "learn_baseline",
      [](const Matrix& x, int p, const BaselineConfig& cfg) {
        return wrap_result(learn_baseline(design_from(x, p), cfg));
      },
      py::arg("x"), py::arg("p"), py::arg("config") = BaselineConfig());

  m.def(
      "inner_minimize",
      [](const Matrix& w0, const Matrix& a0, const Matrix& x, int p, double lambda_w,
         double lambda_a, double alpha, double c, const SolverConfig& cfg) {
        const InnerResult r = inner_minimize(w0, a0, design_from(x, p), Penalties{lambda_w, lambda_a},
                                             MultiplierState{alpha, c}, cfg);
        return py::make_tuple(r.w, r.a, r.iterations, r.objective);
      },
      py::arg("w0"), py::arg("a0"), py::arg("x"), py::arg("p"), py::arg("lambda_w") = 0.0,
      py::arg("lambda_a") = 0.0, py::arg("alpha") = 0.0, py::arg("c") = 1.0,
      py::arg("config") = SolverConfig(), "One primal update; returns (w, a, iterations, objective)");

  m.def("h_value", &h_value, py::arg("w"), py::arg("s") = 1.0);
  m.def("h_gradient", &h_gradient, py::arg("w"), py::arg("s") = 1.0);
  m.def("in_domain", &in_domain, py::arg("w"), py::arg("s") = 1.0);
  m.def("h_notears", &h_notears, py::arg("w"));
  m.def("h_notears_gradient", &h_notears_gradient, py::arg("w"));
  m.def("matrix_exponential", &matrix_exponential, py::arg("m"));

  m.def(
      "is_dag", [](const Matrix& support) { return is_dag(threshold_support(support, 0.0)); },
      py::arg("support"), "True iff the nonzero pattern is acyclic");

  m.def("nfe", &nfe, py::arg("estimate"), py::arg("truth"));
  m.def(
      "support_f1",
      [](const Matrix& estimate, const Matrix& truth, double tau, bool exclude_diagonal) {
        const SupportScore s = support_f1(estimate, truth, tau,
                                          exclude_diagonal ? DiagonalPolicy::exclude
                                                           : DiagonalPolicy::include);
        return py::make_tuple(s.f1, s.precision, s.recall);
      },
      py::arg("estimate"), py::arg("truth"), py::arg("tau"), py::arg("exclude_diagonal") = true);

  m.def(
      "evaluate_metrics",
      [](const Matrix& w_est, const Matrix& a_est, const Matrix& w_true, const Matrix& a_true,
         double tau) { return evaluate_metrics(w_est, a_est, w_true, a_true, tau); },
      py::arg("w_est"), py::arg("a_est"), py::arg("w_true"), py::arg("a_true"),
      py::arg("tau") = 0.05);
}
