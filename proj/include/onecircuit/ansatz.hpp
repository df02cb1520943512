#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "onecircuit/circuit.hpp"

namespace onecircuit {

enum class Entanglement { Full };

/// RealAmplitudes ansatz description: one RY per qubit, then per repetition
/// a full-entanglement CX block followed by another RY column. Parameter
/// count is num_qubits * (reps + 1).
struct AnsatzConfig {
    int num_qubits = 0;  // data qubits
    int reps = 0;
    Entanglement entanglement = Entanglement::Full;
    std::vector<double> theta;

    int num_parameters() const { return num_qubits * (reps + 1); }
    void validate() const;
};

struct AnsatzCircuit {
    std::vector<CircuitOp> ops;
    /// For each parameter, the index of its RY gate in ops. Blocks of the
    /// single-circuit gradient construction are inserted right after these.
    std::vector<std::size_t> param_op_index;
};

AnsatzCircuit build_ansatz(const AnsatzConfig& config);

/// Full circuit for one input: amplitude-encoding state preparation, the
/// ansatz, and (optionally) a terminal measurement of every data qubit into
/// classical bits 0..Q-1.
CircuitProgram build_base_vqc(std::span<const double> x, const AnsatzConfig& config,
                              bool terminal_measurements = true);

/// Per-input cost: L1 distance between an outcome distribution and the
/// one-hot vector of the labeled outcome, i.e. 2 * (1 - a[label]) for a
/// normalized distribution. Linear in the distribution.
double cost_from_distribution(std::span<const double> distribution, int label);

}  // namespace onecircuit
