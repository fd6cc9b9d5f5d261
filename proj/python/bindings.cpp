#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <vector>

#include "tbell/correlators.hpp"
#include "tbell/dynamics.hpp"
#include "tbell/inequalities.hpp"

namespace py = pybind11;
using namespace tbell;

namespace {

Outcome to_outcome(int q) {
    if (q == 1) return Outcome::plus;
    if (q == -1) return Outcome::minus;
    throw std::invalid_argument("outcome must be +1 or -1");
}

std::vector<Outcome> to_outcomes(const std::vector<int>& qs) {
    std::vector<Outcome> out;
    out.reserve(qs.size());
    for (const int q : qs) out.push_back(to_outcome(q));
    return out;
}

}  // namespace

PYBIND11_MODULE(_tbell, m) {
    m.doc() = "Two-level system under projective measurement and temporal Bell inequalities";
    m.attr("__version__") = "0.1.0";

    py::class_<TwoLevelState>(m, "TwoLevelState")
        .def(py::init([](std::complex<double> cp, std::complex<double> cm) { return TwoLevelState{cp, cm}; }),
             py::arg("c_plus") = 1.0, py::arg("c_minus") = 0.0)
        .def_readwrite("c_plus", &TwoLevelState::c_plus)
        .def_readwrite("c_minus", &TwoLevelState::c_minus)
        .def("norm_squared", &TwoLevelState::norm_squared)
        .def("__repr__", [](const TwoLevelState& s) {
            return "TwoLevelState(" + py::repr(py::cast(s.c_plus)).cast<std::string>() + ", " +
                   py::repr(py::cast(s.c_minus)).cast<std::string>() + ")";
        });

    py::class_<DynamicsParams>(m, "DynamicsParams")
        .def(py::init<double>(), py::arg("omega"))
        .def_property_readonly("omega", &DynamicsParams::omega)
        .def_property_readonly("period", &DynamicsParams::period);

    py::class_<MeasurementRecord>(m, "MeasurementRecord")
        .def_readonly("time", &MeasurementRecord::time)
        .def_property_readonly("outcome", [](const MeasurementRecord& r) { return value(r.outcome); })
        .def_readonly("pre_probability", &MeasurementRecord::pre_probability)
        .def_readonly("disturbance", &MeasurementRecord::disturbance);

    py::class_<SelectionPolicy>(m, "SelectionPolicy")
        .def(py::init<double, bool>(), py::arg("epsilon") = 0.0, py::arg("select_both") = false)
        .def_property_readonly("epsilon", &SelectionPolicy::epsilon)
        .def_property_readonly("select_both", &SelectionPolicy::select_both);

    py::class_<InequalitySpec>(m, "InequalitySpec")
        .def(py::init([](int n_times, const std::vector<std::tuple<int, int, double>>& terms, double bound,
                         bool abs_mode) {
                 std::vector<InequalityTerm> parsed;
                 for (const auto& [i, j, k] : terms) parsed.push_back({i, j, k});
                 return InequalitySpec{n_times, std::move(parsed), bound, abs_mode};
             }),
             py::arg("n_times"), py::arg("terms"), py::arg("bound"), py::arg("abs_mode") = false)
        .def_static("preset", &InequalitySpec::preset, py::arg("name"))
        .def_property_readonly("n_times", &InequalitySpec::n_times)
        .def_property_readonly("bound", &InequalitySpec::bound)
        .def_property_readonly("abs_mode", &InequalitySpec::abs_mode)
        .def_property_readonly("name", &InequalitySpec::name);

    py::class_<ViolationReport>(m, "ViolationReport")
        .def_readonly("delta_k_max", &ViolationReport::delta_k_max)
        .def_readonly("argmax_spacing", &ViolationReport::argmax_spacing)
        .def_readonly("a_epsilon", &ViolationReport::a_epsilon)
        .def_readonly("delta_b_max", &ViolationReport::delta_b_max)
        .def_readonly("violated", &ViolationReport::violated);

    m.def("initial_state",
          [](double t_prime, double t0, const DynamicsParams& p) { return initial_state(InitialPhase{t_prime}, t0, p); },
          py::arg("t_prime"), py::arg("t0"), py::arg("params"));
    m.def("propagate", &propagate, py::arg("state"), py::arg("dt"), py::arg("params"));
    m.def("expectation_q", &expectation_q, py::arg("state"));
    m.def("born_probability", [](const TwoLevelState& s, int q) { return born_probability(s, to_outcome(q)); },
          py::arg("state"), py::arg("outcome"));
    m.def("collapse", [](const TwoLevelState& s, int q) { return collapse(s, to_outcome(q)); }, py::arg("state"),
          py::arg("outcome"));
    m.def(
        "measured_trajectory",
        [](double t_prime, const std::vector<double>& times, const std::vector<int>& outcomes,
           const DynamicsParams& p) {
            const auto traj = measured_trajectory(InitialPhase{t_prime}, times, to_outcomes(outcomes), p);
            return py::make_tuple(traj.records, traj.final_state);
        },
        py::arg("t_prime"), py::arg("times"), py::arg("outcomes"), py::arg("params"));
    m.def("trajectory_product",
          [](const std::vector<MeasurementRecord>& r, const TwoLevelState& s) { return trajectory_product(r, s); },
          py::arg("records"), py::arg("final_state"));

    m.def("k_analytic", &k_analytic, py::arg("t1"), py::arg("t2"), py::arg("params"));
    m.def("selection_factor", [](double eps) { return selection_factor(SelectionPolicy{eps}); }, py::arg("epsilon"));
    m.def(
        "k_selective_analytic",
        [](double t1, double t2, const DynamicsParams& p, double eps) {
            return k_selective_analytic(CorrelationRequest{t1, t2, p, SelectionPolicy{eps}});
        },
        py::arg("t1"), py::arg("t2"), py::arg("params"), py::arg("epsilon") = 0.0);
    m.def(
        "k_oracle",
        [](double t1, double t2, const DynamicsParams& p, double eps, int n_nodes, const std::string& scheme,
           bool select_both) {
            return k_oracle(CorrelationRequest{t1, t2, p, SelectionPolicy{eps, select_both}},
                            QuadratureConfig{n_nodes, parse_scheme(scheme)});
        },
        py::arg("t1"), py::arg("t2"), py::arg("params"), py::arg("epsilon") = 0.0, py::arg("n_nodes") = 10000,
        py::arg("scheme") = "uniform-midpoint", py::arg("select_both") = false,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "disturbance",
        [](double t_prime, double t1, int q, const DynamicsParams& p) {
            return disturbance(InitialPhase{t_prime}, t1, to_outcome(q), p);
        },
        py::arg("t_prime"), py::arg("t1"), py::arg("outcome"), py::arg("params"));

    m.def(
        "delta_k",
        [](const InequalitySpec& spec, const std::vector<double>& times, const DynamicsParams& p, double eps) {
            return delta_k(spec, times, p, SelectionPolicy{eps});
        },
        py::arg("spec"), py::arg("times"), py::arg("params"), py::arg("epsilon") = 0.0);
    m.def(
        "delta_k_stationary",
        [](const InequalitySpec& spec, double spacing, const DynamicsParams& p, double eps) {
            return delta_k_stationary(spec, spacing, p, SelectionPolicy{eps});
        },
        py::arg("spec"), py::arg("spacing"), py::arg("params"), py::arg("epsilon") = 0.0);
    m.def(
        "maximize_violation",
        [](const InequalitySpec& spec, const DynamicsParams& p, double eps, int grid_points, double tol) {
            return maximize_violation(spec, p, SelectionPolicy{eps}, SearchConfig{grid_points, tol});
        },
        py::arg("spec"), py::arg("params"), py::arg("epsilon") = 0.0, py::arg("grid_points") = 4096,
        py::arg("tol") = 1e-9);
    m.def(
        "epsilon_threshold",
        [](const InequalitySpec& spec, const DynamicsParams& p, double tol) {
            SolveConfig solve;
            solve.tol = tol;
            return epsilon_threshold(spec, p, solve);
        },
        py::arg("spec"), py::arg("params"), py::arg("tol") = 1e-9);
    m.def("jaynes_cummings_frequency", &jaynes_cummings_frequency, py::arg("rabi"), py::arg("n"));
}
