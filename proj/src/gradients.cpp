#include "onecircuit/gradients.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "onecircuit/branches.hpp"
#include "onecircuit/encoding.hpp"
#include "onecircuit/rng.hpp"

namespace onecircuit {

namespace {

constexpr std::uint64_t kConventionalDomain = 0x434f4e56;  // stream-tag namespaces
constexpr std::uint64_t kImprovedDomain = 0x494d5052;
constexpr std::uint64_t kClassicalDomain = 0x434c4946;

void check_dataset(const Dataset& data, const AnsatzConfig& config) {
    data.validate();
    const int outcomes = 1 << config.num_qubits;
    for (int label : data.labels)
        if (label < 0 || label >= outcomes)
            throw std::invalid_argument("label " + std::to_string(label) +
                                        " not representable on " +
                                        std::to_string(config.num_qubits) + " qubits");
}

AnsatzConfig with_theta(const AnsatzConfig& config, std::vector<double> theta) {
    AnsatzConfig shifted = config;
    shifted.theta = std::move(theta);
    return shifted;
}

/// theta for cost-function index k: 0 is unshifted, 2i+1 / 2i+2 are ±s on
/// parameter i.
std::vector<double> theta_for_index(const AnsatzConfig& config, const ShiftRule& rule, int k) {
    if (k == 0) return config.theta;
    const int parameter = (k - 1) / 2;
    const double sign = (k % 2 == 1) ? +1.0 : -1.0;
    return shifted_theta(config.theta, parameter, sign * rule.shift);
}

GradientReport make_report(const char* mode, const AnsatzConfig& config, std::uint64_t seed) {
    GradientReport report;
    report.mode = mode;
    report.num_qubits = config.num_qubits;
    report.reps = config.reps;
    report.theta = config.theta;
    report.seed = seed;
    return report;
}

/// Assembles gradients from the 2n+1 per-setting mean costs.
void fill_gradients(GradientReport& report, const std::vector<double>& mean_costs,
                    const ShiftRule& rule, int num_parameters) {
    report.unshifted_cost = mean_costs[0];
    report.gradients.resize(num_parameters);
    for (int i = 0; i < num_parameters; ++i)
        report.gradients[i] =
            rule.multiplier * (mean_costs[2 * i + 1] - mean_costs[2 * i + 2]);
}

int data_outcome_of(const ShotRecord& record, int data_qubits) {
    int outcome = 0;
    for (int q = 0; q < data_qubits; ++q) outcome |= int{record.bits[q]} << q;
    return outcome;
}

/// Mean over the dataset of the per-input cost for every cost-function
/// index, with per-index costs supplied by one of the estimators.
class CostAccumulator {
public:
    CostAccumulator(int num_indices, std::size_t num_inputs)
        : sums_(num_indices, 0.0), num_inputs_(num_inputs) {}

    void add(int index, double cost) { sums_[index] += cost / static_cast<double>(num_inputs_); }

    const std::vector<double>& means() const { return sums_; }

private:
    std::vector<double> sums_;
    std::size_t num_inputs_;
};

}  // namespace

std::vector<double> shifted_theta(std::span<const double> theta, int parameter,
                                  double signed_shift) {
    if (parameter < 0 || static_cast<std::size_t>(parameter) >= theta.size())
        throw std::invalid_argument("parameter index out of range");
    std::vector<double> out(theta.begin(), theta.end());
    out[parameter] += signed_shift;
    return out;
}

GradientReport exact_gradients(const Dataset& data, const AnsatzConfig& config,
                               const ShiftRule& rule) {
    config.validate();
    check_dataset(data, config);
    const int n = config.num_parameters();
    const int num_indices = 2 * n + 1;

    CostAccumulator costs(num_indices, data.size());
    for (std::size_t m = 0; m < data.size(); ++m) {
        for (int k = 0; k < num_indices; ++k) {
            const auto program = build_base_vqc(
                data.inputs[m], with_theta(config, theta_for_index(config, rule, k)));
            costs.add(k, cost_from_distribution(exact_distribution(program), data.labels[m]));
        }
    }

    GradientReport report = make_report("exact", config, 0);
    fill_gradients(report, costs.means(), rule, n);
    return report;
}

GradientReport conventional_gradients(const Dataset& data, const AnsatzConfig& config,
                                      const ShiftRule& rule, std::int64_t shots_per_cost,
                                      std::uint64_t seed) {
    config.validate();
    check_dataset(data, config);
    if (shots_per_cost < 1)
        throw std::invalid_argument("conventional estimator needs at least one shot per cost");
    const int n = config.num_parameters();
    const int num_indices = 2 * n + 1;
    const std::size_t outcomes = std::size_t{1} << config.num_qubits;

    CostAccumulator costs(num_indices, data.size());
    std::vector<std::int64_t> outcome_counts(outcomes);
    for (std::size_t m = 0; m < data.size(); ++m) {
        for (int k = 0; k < num_indices; ++k) {
            const auto program = build_base_vqc(
                data.inputs[m], with_theta(config, theta_for_index(config, rule, k)));
            std::fill(outcome_counts.begin(), outcome_counts.end(), 0);
            for_each_shot(program, shots_per_cost,
                          derive_seed(seed, kConventionalDomain + m, k),
                          [&](std::int64_t, const ShotRecord& record) {
                              ++outcome_counts[data_outcome_of(record, config.num_qubits)];
                          });
            std::vector<double> frequencies(outcomes);
            for (std::size_t o = 0; o < outcomes; ++o)
                frequencies[o] = static_cast<double>(outcome_counts[o]) /
                                 static_cast<double>(shots_per_cost);
            costs.add(k, cost_from_distribution(frequencies, data.labels[m]));
        }
    }

    GradientReport report = make_report("conventional", config, seed);
    fill_gradients(report, costs.means(), rule, n);
    report.shots_planned =
        shots_per_cost * static_cast<std::int64_t>(num_indices) *
        static_cast<std::int64_t>(data.size());
    report.per_index_shots.emplace(
        num_indices, shots_per_cost * static_cast<std::int64_t>(data.size()));
    return report;
}

ImprovedCircuit build_improved_circuit(std::span<const double> x, const AnsatzConfig& config,
                                       const ShiftRule& rule, bool terminal_measurements) {
    config.validate();
    EncodedInput encoded = amplitude_encode(x);
    if (encoded.num_qubits != config.num_qubits)
        throw std::invalid_argument("input dimension does not match the ansatz qubit count");

    const int q = config.num_qubits;
    const int n = config.num_parameters();
    const int num_cost_functions = 2 * n + 1;

    ImprovedCircuitSpec spec;
    spec.data_qubits = q;
    spec.num_parameters = n;
    spec.num_cost_functions = num_cost_functions;
    spec.ancilla_a = q;
    spec.ancilla_b = q + 1;
    spec.first_block_clbit = q;
    spec.clbit_qa = terminal_measurements ? q + 2 * n : -1;
    spec.clbit_qb = terminal_measurements ? q + 2 * n + 1 : -1;
    spec.num_clbits = q + 2 * n + 2;

    CircuitProgram program(q + 2, spec.num_clbits);
    std::vector<int> data_qubits(q);
    for (int i = 0; i < q; ++i) data_qubits[i] = i;
    program.append(CircuitOp::state_prep(data_qubits, encoded.state.amps));
    program.append(CircuitOp::x(spec.ancilla_a));  // q_a starts in |1>: no block fired yet

    const AnsatzCircuit ansatz = build_ansatz(config);
    spec.param_op_index.resize(n);
    int block = 0;
    int parameter = 0;
    for (std::size_t op_index = 0; op_index < ansatz.ops.size(); ++op_index) {
        const bool is_param_gate =
            parameter < n && ansatz.param_op_index[parameter] == op_index;
        if (is_param_gate) spec.param_op_index[parameter] = program.size();
        program.append(ansatz.ops[op_index]);
        if (!is_param_gate) continue;

        const int target = ansatz.ops[op_index].qubits[0];
        for (int sign : {+1, -1}) {
            const double gamma =
                2.0 * std::asin(std::sqrt(1.0 / double(num_cost_functions - block)));
            spec.gammas.push_back(gamma);
            spec.blocks.push_back(BlockInfo{parameter, sign, program.size(),
                                            spec.first_block_clbit + block});
            program.append(CircuitOp::cry(spec.ancilla_a, spec.ancilla_b, gamma));
            program.append(CircuitOp::measure(spec.ancilla_b, spec.first_block_clbit + block));
            program.append(CircuitOp::cry(spec.ancilla_b, target, sign * rule.shift));
            program.append(CircuitOp::cx(spec.ancilla_b, spec.ancilla_a));
            program.append(CircuitOp::reset(spec.ancilla_b));
            ++block;
        }
        ++parameter;
    }

    if (terminal_measurements) {
        for (int i = 0; i < q; ++i) program.append(CircuitOp::measure(i, i));
        // Not needed for the estimate, but cheap monitoring of the ancillas.
        program.append(CircuitOp::measure(spec.ancilla_a, spec.clbit_qa));
        program.append(CircuitOp::measure(spec.ancilla_b, spec.clbit_qb));
    }
    return ImprovedCircuit{std::move(program), std::move(spec)};
}

CircuitProgram build_conventional_stack(std::span<const double> x, const AnsatzConfig& config,
                                        const ShiftRule& rule) {
    config.validate();
    const int q = config.num_qubits;
    const int n = config.num_parameters();
    const int num_indices = 2 * n + 1;

    CircuitProgram program(q, q * num_indices);
    for (int k = 0; k < num_indices; ++k) {
        if (k > 0)
            for (int i = 0; i < q; ++i) program.append(CircuitOp::reset(i));
        CircuitProgram sub = build_base_vqc(
            x, with_theta(config, theta_for_index(config, rule, k)), false);
        for (CircuitOp& op : sub.ops) program.append(std::move(op));
        for (int i = 0; i < q; ++i) program.append(CircuitOp::measure(i, k * q + i));
    }
    return program;
}

namespace {

int decode_block_bits(const std::vector<std::uint8_t>& bits, const ImprovedCircuitSpec& spec) {
    int fired = -1;
    for (int b = 0; b < 2 * spec.num_parameters; ++b) {
        if (!bits[spec.first_block_clbit + b]) continue;
        if (fired >= 0)
            throw std::logic_error("blocks " + std::to_string(fired) + " and " +
                                   std::to_string(b) +
                                   " both fired in one shot; the circuit guarantees at most "
                                   "one activation");
        fired = b;
    }
    return fired < 0 ? 0 : spec.cost_index_of_block(fired);
}

}  // namespace

DecodedShot decode_shot(const ShotRecord& record, const ImprovedCircuitSpec& spec) {
    if (record.bits.size() != static_cast<std::size_t>(spec.num_clbits))
        throw std::invalid_argument("record width does not match the circuit's register");
    return DecodedShot{decode_block_bits(record.bits, spec),
                       data_outcome_of(record, spec.data_qubits)};
}

namespace {

/// Shared bucket-and-estimate stage of the single-circuit estimators.
/// shot_source runs all shots for one input and calls the sink with each
/// decoded shot.
ImprovedRun bucketed_run(
    const char* mode, const Dataset& data, const AnsatzConfig& config, const ShiftRule& rule,
    const ShotPlan& plan, std::uint64_t seed,
    const std::function<void(std::size_t, const std::function<void(const DecodedShot&)>&)>&
        shot_source) {
    config.validate();
    check_dataset(data, config);
    if (plan.shots_per_cost < 1)
        throw std::invalid_argument("shot plan needs at least one shot per cost function");
    if (plan.num_parameters != config.num_parameters())
        throw std::invalid_argument("shot plan was made for " +
                                    std::to_string(plan.num_parameters) +
                                    " parameters, ansatz has " +
                                    std::to_string(config.num_parameters()));

    const int n = config.num_parameters();
    const int num_indices = 2 * n + 1;
    const std::size_t outcomes = std::size_t{1} << config.num_qubits;
    const std::int64_t shots_per_input = plan.total();

    ImprovedRun run;
    CostAccumulator costs(num_indices, data.size());
    std::vector<std::vector<std::int64_t>> outcome_counts(
        num_indices, std::vector<std::int64_t>(outcomes));

    for (std::size_t m = 0; m < data.size(); ++m) {
        for (auto& row : outcome_counts) std::fill(row.begin(), row.end(), 0);
        std::vector<std::int64_t> index_counts(num_indices, 0);

        shot_source(m, [&](const DecodedShot& shot) {
            ++index_counts[shot.cost_index];
            ++outcome_counts[shot.cost_index][shot.data_outcome];
        });

        for (int k = 0; k < num_indices; ++k) {
            if (index_counts[k] == 0)
                throw std::runtime_error(
                    "insufficient shots for cost index " + std::to_string(k) + " (input " +
                    std::to_string(m) + "): 0 of " + std::to_string(shots_per_input) +
                    " shots decoded to it; raise the shot budget");
            std::vector<double> frequencies(outcomes);
            for (std::size_t o = 0; o < outcomes; ++o)
                frequencies[o] = static_cast<double>(outcome_counts[k][o]) /
                                 static_cast<double>(index_counts[k]);
            costs.add(k, cost_from_distribution(frequencies, data.labels[m]));
        }
        run.per_input_index_counts.push_back(std::move(index_counts));
    }

    run.report = make_report(mode, config, seed);
    fill_gradients(run.report, costs.means(), rule, n);
    run.report.shots_planned = shots_per_input * static_cast<std::int64_t>(data.size());
    std::vector<std::int64_t> totals(num_indices, 0);
    for (const auto& row : run.per_input_index_counts)
        for (int k = 0; k < num_indices; ++k) totals[k] += row[k];
    run.report.per_index_shots = std::move(totals);
    return run;
}

}  // namespace

ImprovedRun improved_run(const Dataset& data, const AnsatzConfig& config, const ShiftRule& rule,
                         const ShotPlan& plan, std::uint64_t seed) {
    return bucketed_run(
        "improved", data, config, rule, plan, seed,
        [&](std::size_t m, const std::function<void(const DecodedShot&)>& sink) {
            const ImprovedCircuit circuit = build_improved_circuit(data.inputs[m], config, rule);
            for_each_shot(circuit.program, plan.total(),
                          derive_seed(seed, kImprovedDomain, m),
                          [&](std::int64_t, const ShotRecord& record) {
                              sink(decode_shot(record, circuit.spec));
                          });
        });
}

GradientReport improved_gradients(const Dataset& data, const AnsatzConfig& config,
                                  const ShiftRule& rule, const ShotPlan& plan,
                                  std::uint64_t seed) {
    return improved_run(data, config, rule, plan, seed).report;
}

ImprovedCircuit build_classical_control_circuit(std::span<const double> x,
                                                const AnsatzConfig& config,
                                                const ShiftRule& rule) {
    config.validate();
    EncodedInput encoded = amplitude_encode(x);
    if (encoded.num_qubits != config.num_qubits)
        throw std::invalid_argument("input dimension does not match the ansatz qubit count");

    const int q = config.num_qubits;
    const int n = config.num_parameters();

    ImprovedCircuitSpec spec;
    spec.data_qubits = q;
    spec.num_parameters = n;
    spec.num_cost_functions = 2 * n + 1;
    spec.first_block_clbit = q;
    spec.num_clbits = q + 2 * n;

    CircuitProgram program(q, spec.num_clbits);
    std::vector<int> data_qubits(q);
    for (int i = 0; i < q; ++i) data_qubits[i] = i;
    program.append(CircuitOp::state_prep(data_qubits, encoded.state.amps));

    const AnsatzCircuit ansatz = build_ansatz(config);
    spec.param_op_index.resize(n);
    int block = 0;
    int parameter = 0;
    for (std::size_t op_index = 0; op_index < ansatz.ops.size(); ++op_index) {
        const bool is_param_gate =
            parameter < n && ansatz.param_op_index[parameter] == op_index;
        if (is_param_gate) spec.param_op_index[parameter] = program.size();
        program.append(ansatz.ops[op_index]);
        if (!is_param_gate) continue;

        const int target = ansatz.ops[op_index].qubits[0];
        for (int sign : {+1, -1}) {
            spec.blocks.push_back(BlockInfo{parameter, sign, program.size(),
                                            spec.first_block_clbit + block});
            program.append(CircuitOp::classical_if(
                spec.first_block_clbit + block, CircuitOp::ry(target, sign * rule.shift)));
            ++block;
        }
        ++parameter;
    }
    for (int i = 0; i < q; ++i) program.append(CircuitOp::measure(i, i));
    return ImprovedCircuit{std::move(program), std::move(spec)};
}

ImprovedRun classical_control_run(const Dataset& data, const AnsatzConfig& config,
                                  const ShiftRule& rule, const ShotPlan& plan,
                                  std::uint64_t seed) {
    return bucketed_run(
        "classical-ctrl", data, config, rule, plan, seed,
        [&](std::size_t m, const std::function<void(const DecodedShot&)>& sink) {
            const ImprovedCircuit circuit =
                build_classical_control_circuit(data.inputs[m], config, rule);
            const int num_indices = circuit.spec.num_cost_functions;
            const std::uint64_t input_seed = derive_seed(seed, kClassicalDomain, m);
            for (std::int64_t shot = 0; shot < plan.total(); ++shot) {
                RngStream rng(input_seed, static_cast<std::uint64_t>(shot));
                // The classical dice roll replacing the gamma-angle blocks.
                const int index = static_cast<int>(rng.next_below(num_indices));
                std::vector<std::uint8_t> clbits(circuit.spec.num_clbits, 0);
                if (index > 0) clbits[circuit.spec.first_block_clbit + index - 1] = 1;
                const ShotRecord record =
                    run_shot_with_clbits(circuit.program, rng, std::move(clbits));
                sink(decode_shot(record, circuit.spec));
            }
        });
}

GradientReport classical_control_gradients(const Dataset& data, const AnsatzConfig& config,
                                           const ShiftRule& rule, const ShotPlan& plan,
                                           std::uint64_t seed) {
    return classical_control_run(data, config, rule, plan, seed).report;
}

BranchOracleReport branch_oracle_check(std::span<const double> x, const AnsatzConfig& config,
                                       const ShiftRule& rule, double tolerance) {
    BranchOracleReport report;
    const ImprovedCircuit circuit = build_improved_circuit(x, config, rule, false);
    const ImprovedCircuitSpec& spec = circuit.spec;
    report.expected_branches = spec.num_cost_functions;

    const std::vector<Branch> branches = enumerate_branches(circuit.program);
    report.branch_count = static_cast<int>(branches.size());
    if (report.branch_count != report.expected_branches) {
        report.detail = "expected " + std::to_string(report.expected_branches) +
                        " surviving branches, got " + std::to_string(report.branch_count);
        return report;
    }

    std::vector<int> data_qubits(spec.data_qubits);
    for (int i = 0; i < spec.data_qubits; ++i) data_qubits[i] = i;
    const double uniform = 1.0 / static_cast<double>(spec.num_cost_functions);

    std::vector<bool> index_seen(spec.num_cost_functions, false);
    for (const Branch& branch : branches) {
        const int index = decode_block_bits(branch.clbits, spec);
        if (index_seen[index]) {
            report.detail = "cost index " + std::to_string(index) + " appears in two branches";
            return report;
        }
        index_seen[index] = true;

        report.max_probability_error =
            std::max(report.max_probability_error, std::abs(branch.probability - uniform));

        const std::vector<double> branch_dist =
            branch.final_state.marginal_probabilities(data_qubits);
        const auto plain = build_base_vqc(
            x, with_theta(config, theta_for_index(config, rule, index)));
        const std::vector<double> expected_dist = exact_distribution(plain);
        for (std::size_t o = 0; o < expected_dist.size(); ++o)
            report.max_distribution_error = std::max(
                report.max_distribution_error, std::abs(branch_dist[o] - expected_dist[o]));
    }

    if (report.max_probability_error > tolerance) {
        report.detail = "branch probability deviates from 1/N by " +
                        std::to_string(report.max_probability_error);
        return report;
    }
    if (report.max_distribution_error > tolerance) {
        report.detail = "conditional data distribution deviates from the shifted circuit by " +
                        std::to_string(report.max_distribution_error);
        return report;
    }
    report.passed = true;
    return report;
}

namespace {

Matrix2 gate_matrix_at(const CircuitProgram& program, std::size_t index) {
    const CircuitOp& op = program.ops[index];
    switch (op.kind) {
        case OpKind::RY:
            return ry_matrix(op.angle);
        case OpKind::Unitary1q:
            return op.matrix;
        default:
            throw std::invalid_argument("op at the parameter position is not a 1-qubit gate");
    }
}

}  // namespace

ImprovedCircuit substitute_base_gate(const ImprovedCircuit& circuit, int parameter,
                                     const Matrix2& gate) {
    if (parameter < 0 ||
        static_cast<std::size_t>(parameter) >= circuit.spec.param_op_index.size())
        throw std::invalid_argument("parameter index out of range");
    ImprovedCircuit out = circuit;
    const std::size_t position = out.spec.param_op_index[parameter];
    const int qubit = out.program.ops[position].qubits[0];
    out.program.ops[position] = CircuitOp::unitary(qubit, gate);
    return out;
}

ImprovedCircuit general_shift_insertion(const ImprovedCircuit& circuit, int block_index,
                                        const Matrix2& inverse_gate,
                                        const Matrix2& shifted_gate) {
    if (block_index < 0 ||
        static_cast<std::size_t>(block_index) >= circuit.spec.blocks.size())
        throw std::invalid_argument("block index out of range");
    if (!is_unitary(inverse_gate) || !is_unitary(shifted_gate))
        throw std::invalid_argument("replacement gates must be unitary");

    const BlockInfo& block = circuit.spec.blocks[block_index];
    const Matrix2 base = gate_matrix_at(circuit.program,
                                        circuit.spec.param_op_index[block.parameter]);
    if (!is_identity(matmul(inverse_gate, base)))
        throw std::invalid_argument(
            "inverse gate does not invert the parameterized gate at this block");

    const std::size_t shift_op = block.first_op + 2;  // the CRY(±s) inside the block
    const CircuitOp& old = circuit.program.ops[shift_op];
    if (old.kind != OpKind::CRY)
        throw std::invalid_argument("block was already generalized");
    const int control = old.qubits[0];
    const int target = old.qubits[1];

    ImprovedCircuit out = circuit;
    out.program.ops[shift_op] = CircuitOp::controlled_unitary(control, target, inverse_gate);
    out.program.ops.insert(out.program.ops.begin() + static_cast<std::ptrdiff_t>(shift_op) + 1,
                           CircuitOp::controlled_unitary(control, target, shifted_gate));

    // Every recorded position after the insertion point moves by one.
    for (BlockInfo& b : out.spec.blocks)
        if (b.first_op > shift_op) ++b.first_op;
    for (std::size_t& p : out.spec.param_op_index)
        if (p > shift_op) ++p;
    return out;
}

}  // namespace onecircuit
