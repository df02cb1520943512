#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "onecircuit/branches.hpp"
#include "onecircuit/encoding.hpp"
#include "onecircuit/gradients.hpp"
#include "onecircuit/report.hpp"
#include "onecircuit/resources.hpp"

namespace py = pybind11;
using namespace onecircuit;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Single-circuit parameter-shift gradients for variational quantum circuits";

    py::class_<EncodedInput>(m, "EncodedInput")
        .def_readonly("padded", &EncodedInput::padded)
        .def_readonly("num_qubits", &EncodedInput::num_qubits)
        .def_readonly("c_norm", &EncodedInput::c_norm)
        .def_property_readonly("amplitudes",
                               [](const EncodedInput& e) { return e.state.amps; });

    py::class_<AnsatzConfig>(m, "AnsatzConfig")
        .def(py::init([](int qubits, int reps, std::vector<double> theta) {
                 AnsatzConfig config;
                 config.num_qubits = qubits;
                 config.reps = reps;
                 config.theta = std::move(theta);
                 config.validate();
                 return config;
             }),
             py::arg("num_qubits"), py::arg("reps"), py::arg("theta"))
        .def_readonly("num_qubits", &AnsatzConfig::num_qubits)
        .def_readonly("reps", &AnsatzConfig::reps)
        .def_readonly("theta", &AnsatzConfig::theta)
        .def_property_readonly("num_parameters", &AnsatzConfig::num_parameters);

    py::class_<ShiftRule>(m, "ShiftRule")
        .def(py::init<>())
        .def(py::init([](double multiplier, double shift) {
                 return ShiftRule{multiplier, shift};
             }),
             py::arg("multiplier"), py::arg("shift"))
        .def_readonly("multiplier", &ShiftRule::multiplier)
        .def_readonly("shift", &ShiftRule::shift);

    py::class_<ShotPlan>(m, "ShotPlan")
        .def(py::init([](std::int64_t shots_per_cost, int num_parameters) {
                 return ShotPlan{shots_per_cost, num_parameters};
             }),
             py::arg("shots_per_cost"), py::arg("num_parameters"))
        .def_readonly("shots_per_cost", &ShotPlan::shots_per_cost)
        .def_readonly("num_parameters", &ShotPlan::num_parameters)
        .def_property_readonly("total", &ShotPlan::total);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init([](std::vector<std::vector<double>> inputs, std::vector<int> labels) {
                 Dataset data;
                 data.inputs = std::move(inputs);
                 data.labels = std::move(labels);
                 data.validate();
                 return data;
             }),
             py::arg("inputs"), py::arg("labels"))
        .def_readonly("inputs", &Dataset::inputs)
        .def_readonly("labels", &Dataset::labels)
        .def("__len__", &Dataset::size);

    py::class_<GradientReport>(m, "GradientReport")
        .def_readonly("mode", &GradientReport::mode)
        .def_readonly("num_qubits", &GradientReport::num_qubits)
        .def_readonly("reps", &GradientReport::reps)
        .def_readonly("theta", &GradientReport::theta)
        .def_readonly("shots_planned", &GradientReport::shots_planned)
        .def_readonly("gradients", &GradientReport::gradients)
        .def_readonly("unshifted_cost", &GradientReport::unshifted_cost)
        .def_readonly("per_index_shots", &GradientReport::per_index_shots)
        .def_readonly("seed", &GradientReport::seed)
        .def("to_json", &report_to_json);

    py::class_<ImprovedRun>(m, "ImprovedRun")
        .def_readonly("report", &ImprovedRun::report)
        .def_readonly("per_input_index_counts", &ImprovedRun::per_input_index_counts);

    py::class_<BranchOracleReport>(m, "BranchOracleReport")
        .def_readonly("passed", &BranchOracleReport::passed)
        .def_readonly("branch_count", &BranchOracleReport::branch_count)
        .def_readonly("expected_branches", &BranchOracleReport::expected_branches)
        .def_readonly("max_probability_error", &BranchOracleReport::max_probability_error)
        .def_readonly("max_distribution_error", &BranchOracleReport::max_distribution_error)
        .def_readonly("detail", &BranchOracleReport::detail);

    py::class_<ResourceReport>(m, "ResourceReport")
        .def_readonly("data_qubits", &ResourceReport::data_qubits)
        .def_readonly("reps", &ResourceReport::reps)
        .def_readonly("num_parameters", &ResourceReport::num_parameters)
        .def_readonly("feature_map_depth", &ResourceReport::feature_map_depth)
        .def_readonly("base_depth", &ResourceReport::base_depth)
        .def_readonly("per_rep_depth", &ResourceReport::per_rep_depth)
        .def_readonly("fixed_depth", &ResourceReport::fixed_depth)
        .def_readonly("depth_per_parameter", &ResourceReport::depth_per_parameter)
        .def_readonly("depth_conventional", &ResourceReport::depth_conventional)
        .def_readonly("depth_improved", &ResourceReport::depth_improved)
        .def_readonly("clbits_conventional", &ResourceReport::clbits_conventional)
        .def_readonly("clbits_improved", &ResourceReport::clbits_improved)
        .def_readonly("measured_improved_depth", &ResourceReport::measured_improved_depth)
        .def_readonly("gadget_ops_added", &ResourceReport::gadget_ops_added)
        .def_readonly("param_count_ok", &ResourceReport::param_count_ok)
        .def_readonly("gadget_ops_ok", &ResourceReport::gadget_ops_ok)
        .def_readonly("clbits_ok", &ResourceReport::clbits_ok)
        .def_readonly("improved_depth_bound_ok", &ResourceReport::improved_depth_bound_ok);

    m.def("amplitude_encode",
          [](const std::vector<double>& x) { return amplitude_encode(x); }, py::arg("x"));
    m.def("cost_from_distribution",
          [](const std::vector<double>& a, int label) {
              return cost_from_distribution(a, label);
          },
          py::arg("distribution"), py::arg("label"));

    m.def("generate_random_dataset", &generate_random_dataset, py::arg("count"),
          py::arg("dimension"), py::arg("seed"));
    m.def("load_idx_images", &load_idx_images, py::arg("image_path"), py::arg("label_path"),
          py::arg("limit"));

    m.def("exact_gradients", &exact_gradients, py::arg("data"), py::arg("config"),
          py::arg("rule") = ShiftRule{});
    m.def("conventional_gradients", &conventional_gradients, py::arg("data"),
          py::arg("config"), py::arg("rule"), py::arg("shots_per_cost"), py::arg("seed"));
    m.def("improved_gradients", &improved_gradients, py::arg("data"), py::arg("config"),
          py::arg("rule"), py::arg("plan"), py::arg("seed"));
    m.def("improved_run", &improved_run, py::arg("data"), py::arg("config"), py::arg("rule"),
          py::arg("plan"), py::arg("seed"));
    m.def("classical_control_gradients", &classical_control_gradients, py::arg("data"),
          py::arg("config"), py::arg("rule"), py::arg("plan"), py::arg("seed"));
    m.def("classical_control_run", &classical_control_run, py::arg("data"), py::arg("config"),
          py::arg("rule"), py::arg("plan"), py::arg("seed"));

    m.def("branch_oracle_check",
          [](const std::vector<double>& x, const AnsatzConfig& config, const ShiftRule& rule,
             double tolerance) { return branch_oracle_check(x, config, rule, tolerance); },
          py::arg("x"), py::arg("config"), py::arg("rule") = ShiftRule{},
          py::arg("tolerance") = 1e-10);

    m.def("model_resources", &model_resources, py::arg("config"),
          py::arg("feature_map_depth"));

    m.def("persist_report", &persist_report, py::arg("report"), py::arg("path"));
    m.def("load_report", &load_report, py::arg("path"));
}
