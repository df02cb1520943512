#include "onecircuit/resources.hpp"

#include <algorithm>
#include <stdexcept>

#include "onecircuit/gradients.hpp"

namespace onecircuit {

namespace {

void note_wires(const CircuitOp& op, int num_qubits, std::vector<int>& wires) {
    wires.clear();
    for (int q : op.qubits) wires.push_back(q);
    if (op.kind == OpKind::Measure) wires.push_back(num_qubits + op.clbit);
    if (op.kind == OpKind::ClassicalIf) wires.push_back(num_qubits + op.condition_bit);
}

int pure_ansatz_depth(const AnsatzConfig& config, int reps) {
    AnsatzConfig probe = config;
    probe.reps = reps;
    probe.theta.assign(static_cast<std::size_t>(probe.num_parameters()), 0.0);
    CircuitProgram program(probe.num_qubits, 0);
    for (CircuitOp& op : build_ansatz(probe).ops) program.append(std::move(op));
    return measure_depth(program);
}

}  // namespace

int measure_depth(const CircuitProgram& program) {
    std::vector<int> busy_until(static_cast<std::size_t>(program.num_qubits + program.num_clbits),
                                0);
    int depth = 0;
    std::vector<int> wires;
    for (const CircuitOp& op : program.ops) {
        note_wires(op, program.num_qubits, wires);
        int layer = 0;
        for (int w : wires) layer = std::max(layer, busy_until[w]);
        ++layer;
        for (int w : wires) busy_until[w] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

ResourceReport model_resources(const AnsatzConfig& config, int feature_map_depth) {
    config.validate();
    if (feature_map_depth < 0)
        throw std::invalid_argument("feature map depth must be non-negative");

    const int q = config.num_qubits;
    const int n = config.num_parameters();
    const ShiftRule rule;

    ResourceReport report;
    report.data_qubits = q;
    report.reps = config.reps;
    report.num_parameters = n;
    report.feature_map_depth = feature_map_depth;

    const std::vector<double> probe_input(std::size_t{1} << q, 1.0);
    const CircuitProgram base = build_base_vqc(probe_input, config);
    const ImprovedCircuit improved = build_improved_circuit(probe_input, config, rule);
    const CircuitProgram stack = build_conventional_stack(probe_input, config, rule);

    // The state-prep placeholder occupies one layer; the model charges the
    // configured feature-map depth instead.
    report.measured_base_depth = measure_depth(base);
    report.base_depth = report.measured_base_depth - 1 + feature_map_depth;
    report.per_rep_depth =
        pure_ansatz_depth(config, config.reps + 1) - pure_ansatz_depth(config, config.reps);
    report.fixed_depth = report.base_depth - config.reps * report.per_rep_depth;
    report.depth_per_parameter = static_cast<double>(report.base_depth) / n;
    report.depth_conventional =
        static_cast<std::int64_t>(report.base_depth) * (2 * std::int64_t{n} + 1);
    report.depth_improved = report.base_depth + 10 * std::int64_t{n};
    report.clbits_conventional = q * (2 * n + 1);
    report.clbits_improved = q + 2 * n + 2;

    report.measured_improved_depth = measure_depth(improved.program) - 1 + feature_map_depth;
    report.measured_stack_clbits = stack.num_clbits;
    report.measured_improved_clbits = improved.program.num_clbits;
    report.base_op_count = static_cast<std::int64_t>(base.size());
    report.improved_op_count = static_cast<std::int64_t>(improved.program.size());
    // Everything beyond the blocks is the one-time q_a init plus the two
    // monitoring measurements.
    report.gadget_ops_added = report.improved_op_count - report.base_op_count - 3;

    report.param_count_ok = n == q * (config.reps + 1) &&
                            config.theta.size() == static_cast<std::size_t>(n);
    report.gadget_ops_ok = report.gadget_ops_added == 10 * std::int64_t{n};
    report.clbits_ok = report.measured_stack_clbits == report.clbits_conventional &&
                       report.measured_improved_clbits == report.clbits_improved;
    report.improved_depth_bound_ok =
        report.measured_improved_depth >= 10 * n &&
        report.measured_improved_depth <= report.base_depth + 10 * n;
    return report;
}

std::vector<double> lambda_asymptote(double per_rep_depth, int data_qubits, double fixed_depth,
                                     std::span<const std::int64_t> n_values) {
    if (per_rep_depth <= 0 || data_qubits <= 0)
        throw std::invalid_argument("per-repetition depth and qubit count must be positive");
    std::vector<double> lambdas;
    lambdas.reserve(n_values.size());
    for (std::int64_t n : n_values) {
        if (n <= 0) throw std::invalid_argument("parameter counts must be positive");
        lambdas.push_back((fixed_depth - per_rep_depth) / static_cast<double>(n) +
                          per_rep_depth / static_cast<double>(data_qubits));
    }
    return lambdas;
}

}  // namespace onecircuit
