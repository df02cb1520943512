#include "onecircuit/ansatz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "onecircuit/encoding.hpp"

namespace onecircuit {

void AnsatzConfig::validate() const {
    if (num_qubits < 1) throw std::invalid_argument("ansatz needs at least one qubit");
    if (reps < 0) throw std::invalid_argument("repetition count must be non-negative");
    if (theta.size() != static_cast<std::size_t>(num_parameters()))
        throw std::invalid_argument("expected " + std::to_string(num_parameters()) +
                                    " parameters, got " + std::to_string(theta.size()));
    for (double t : theta)
        if (!std::isfinite(t)) throw std::invalid_argument("parameter is not finite");
}

AnsatzCircuit build_ansatz(const AnsatzConfig& config) {
    config.validate();
    AnsatzCircuit circuit;
    const int q = config.num_qubits;
    int next_param = 0;

    auto ry_column = [&] {
        for (int i = 0; i < q; ++i) {
            circuit.param_op_index.push_back(circuit.ops.size());
            circuit.ops.push_back(CircuitOp::ry(i, config.theta[next_param++]));
        }
    };

    ry_column();
    for (int rep = 0; rep < config.reps; ++rep) {
        // Full entanglement: one CX per ordered pair (i, j), i < j, control i.
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j) circuit.ops.push_back(CircuitOp::cx(i, j));
        ry_column();
    }
    return circuit;
}

CircuitProgram build_base_vqc(std::span<const double> x, const AnsatzConfig& config,
                              bool terminal_measurements) {
    EncodedInput encoded = amplitude_encode(x);
    if (encoded.num_qubits != config.num_qubits)
        throw std::invalid_argument("input encodes on " + std::to_string(encoded.num_qubits) +
                                    " qubits but the ansatz has " +
                                    std::to_string(config.num_qubits));

    CircuitProgram program(config.num_qubits, terminal_measurements ? config.num_qubits : 0);
    std::vector<int> data_qubits(config.num_qubits);
    for (int i = 0; i < config.num_qubits; ++i) data_qubits[i] = i;
    program.append(CircuitOp::state_prep(data_qubits, encoded.state.amps));

    for (CircuitOp& op : build_ansatz(config).ops) program.append(std::move(op));

    if (terminal_measurements)
        for (int i = 0; i < config.num_qubits; ++i) program.append(CircuitOp::measure(i, i));
    return program;
}

double cost_from_distribution(std::span<const double> distribution, int label) {
    if (label < 0 || static_cast<std::size_t>(label) >= distribution.size())
        throw std::invalid_argument("label " + std::to_string(label) +
                                    " outside the outcome range");
    double total = 0.0;
    for (double p : distribution) {
        if (p < -1e-12) throw std::invalid_argument("distribution has a negative entry");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("distribution sums to " + std::to_string(total) +
                                    ", not 1");
    double cost = 0.0;
    for (std::size_t k = 0; k < distribution.size(); ++k)
        cost += std::abs(distribution[k] - (static_cast<int>(k) == label ? 1.0 : 0.0));
    return cost;
}

}  // namespace onecircuit
