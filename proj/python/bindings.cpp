#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qapbound/bound_solver.hpp"
#include "qapbound/cli.hpp"
#include "qapbound/ilap_reduction.hpp"
#include "qapbound/io.hpp"
#include "qapbound/lap_solver.hpp"
#include "qapbound/relative_interior.hpp"
#include "qapbound/results.hpp"

namespace py = pybind11;
using namespace qapbound;

namespace {

// Rows as lists of (label, cost) tuples.
using PyRows = std::vector<std::vector<std::pair<Index, double>>>;

std::vector<std::vector<UnaryInput>> to_rows(const PyRows& rows) {
  std::vector<std::vector<UnaryInput>> out(rows.size());
  for (std::size_t v = 0; v < rows.size(); ++v)
    for (auto [l, c] : rows[v]) out[v].push_back({l, c});
  return out;
}

PyRows from_costs(const SparseCosts& c) {
  PyRows rows(c.num_vertices());
  for (Index v = 0; v < c.num_vertices(); ++v)
    for (std::size_t e = c.row_begin(v); e < c.row_end(v); ++e) rows[v].emplace_back(c.entry_label(e), c.entry_cost(e));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_qapbound, m) {
  m.doc() = "Dual lower bounds for incomplete quadratic assignment problems";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  m.attr("DEFAULT_TAU") = kDefaultTau;

  py::class_<LapInstance>(m, "LapInstance")
      .def(py::init([](Index n, const PyRows& rows) { return LapInstance(n, to_rows(rows)); }), py::arg("n"),
           py::arg("rows"))
      .def_static("dense", [](Index n, const std::vector<double>& matrix) { return LapInstance::dense(n, matrix); })
      .def_property_readonly("size", &LapInstance::size)
      .def_property_readonly("rows", [](const LapInstance& i) { return from_costs(i.costs()); })
      .def("objective", &lap_objective)
      .def("tolerance", &LapInstance::tolerance, py::arg("tau") = kDefaultTau);

  py::class_<IlapInstance>(m, "IlapInstance")
      .def(py::init([](Index num_real_labels, const PyRows& rows, std::vector<double> dummy_costs) {
             return IlapInstance(num_real_labels, to_rows(rows), std::move(dummy_costs));
           }),
           py::arg("num_real_labels"), py::arg("rows"), py::arg("dummy_costs"))
      .def_property_readonly("num_vertices", &IlapInstance::num_vertices)
      .def_property_readonly("num_real_labels", &IlapInstance::num_real_labels)
      .def_property_readonly("dummy", &IlapInstance::dummy)
      .def_property_readonly("rows", [](const IlapInstance& i) { return from_costs(i.costs()); })
      .def("objective", &ilap_objective);

  py::class_<IqapInstance>(m, "IqapInstance")
      .def(py::init([](const IlapInstance& unary, const std::vector<std::tuple<Index, Index, Index, Index, double>>& pw) {
             std::vector<PairwiseInput> in;
             for (auto [u, a, v, b, c] : pw) in.push_back({u, a, v, b, c});
             return IqapInstance(unary, in);
           }),
           py::arg("unary"), py::arg("pairwise") = std::vector<std::tuple<Index, Index, Index, Index, double>>{})
      .def_property_readonly("unary", &IqapInstance::unary)
      .def_property_readonly("num_vertices", &IqapInstance::num_vertices)
      .def_property_readonly("num_edges", &IqapInstance::num_edges)
      .def("objective", &iqap_objective)
      .def("__eq__", [](const IqapInstance& a, const IqapInstance& b) { return a == b; });

  py::class_<LapDual>(m, "LapDual")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("alpha"), py::arg("beta"))
      .def_readwrite("alpha", &LapDual::alpha)
      .def_readwrite("beta", &LapDual::beta);
  py::class_<IlapDual>(m, "IlapDual")
      .def_readonly("alpha", &IlapDual::alpha)
      .def_readonly("beta", &IlapDual::beta);

  py::class_<LapSolution>(m, "LapSolution")
      .def_readonly("assignment", &LapSolution::assignment)
      .def_readonly("dual", &LapSolution::dual)
      .def_readonly("value", &LapSolution::value);
  py::class_<IlapSolution>(m, "IlapSolution")
      .def_readonly("assignment", &IlapSolution::assignment)
      .def_readonly("dual", &IlapSolution::dual)
      .def_readonly("value", &IlapSolution::value);

  m.def("solve_lap", &solve_lap, py::arg("instance"), "Optimal assignment and dual, or None without a perfect matching.");
  m.def(
      "shift_to_relative_interior",
      [](const LapInstance& inst, const LapDual& dual, const Assignment& x, std::optional<double> tol) {
        return shift_to_relative_interior(inst, dual, x, tol.value_or(inst.tolerance()));
      },
      py::arg("instance"), py::arg("dual"), py::arg("assignment"), py::arg("tol") = py::none());
  m.def(
      "solve_ilap",
      [](const IlapInstance& inst, bool relative_interior, double tau) {
        return solve_ilap(inst, relative_interior ? DualMode::relative_interior : DualMode::optimal, tau);
      },
      py::arg("instance"), py::arg("relative_interior") = true, py::arg("tau") = kDefaultTau);
  m.def("lap_dual_objective", py::overload_cast<const LapInstance&, const LapDual&>(&dual_objective));
  m.def("ilap_dual_objective", py::overload_cast<const IlapInstance&, const IlapDual&>(&dual_objective));

  m.def("parse_dd", &parse_dd, py::arg("text"), py::arg("dummy_cost") = 0.0);
  m.def("serialize_dd", &serialize_dd);
  m.def(
      "parse_qaplib",
      [](std::string_view text) {
        const auto conv = convert_qaplib_to_iqap(parse_qaplib(text));
        return py::make_tuple(conv.instance, conv.offset);
      },
      py::arg("text"), "Converted instance and the constant to add to its bounds.");
  m.def("augment_instance", &augment_instance);

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("method", [](const BoundReport& r) { return method_name(r.method); })
      .def_readonly("initial_bound", &BoundReport::initial_bound)
      .def_readonly("final_bound", &BoundReport::final_bound)
      .def_readonly("trajectory", &BoundReport::trajectory)
      .def_readonly("iterations", &BoundReport::iterations)
      .def_readonly("wall_time", &BoundReport::wall_time)
      .def_property_readonly("stop_reason", [](const BoundReport& r) { return stop_reason_name(r.stop_reason); })
      .def("to_json", [](const BoundReport& r, bool trajectory) { return report_to_json(r, trajectory); },
           py::arg("trajectory") = false);

  m.def(
      "compute_lower_bound",
      [](const IqapInstance& inst, const std::string& method, int max_iterations, double time_limit, double epsilon,
         bool early_stop, double tau) {
        SolverConfig c;
        c.method = parse_method(method);
        c.max_iterations = max_iterations;
        c.time_limit = time_limit;
        c.bound_improvement_epsilon = epsilon;
        c.early_stop = early_stop;
        c.tau = tau;
        py::gil_scoped_release release;
        return compute_lower_bound(inst, c);
      },
      py::arg("instance"), py::arg("method") = "hung-ri", py::arg("max_iterations") = 100, py::arg("time_limit") = 0.0,
      py::arg("epsilon") = 0.0, py::arg("early_stop") = true, py::arg("tau") = kDefaultTau);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Exit code, stdout and stderr of the command line front end.");
}
