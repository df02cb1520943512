#include "onecircuit/branches.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "onecircuit/simulator.hpp"

namespace onecircuit {

namespace {

struct PendingBranch {
    Statevector state;
    std::vector<std::uint8_t> clbits;
    std::map<int, int> outcome_bits;
    double probability = 1.0;
    std::size_t next_op = 0;
};

void apply_unitary_for_enumeration(Statevector& state, const CircuitOp& op,
                                   std::vector<std::uint8_t>& clbits) {
    // Measurement-free ops never consult the rng; reuse the shot path with a
    // dummy stream. ClassicalIf reads the branch's recorded bits.
    RngStream dummy(0, 0);
    apply_op(state, op, clbits, dummy);
}

/// Probability-weighted projection; returns false when the outcome is
/// impossible (below the prune threshold).
bool project(Statevector& state, int qubit, int outcome, double probability, double threshold) {
    if (probability < threshold) return false;
    const std::size_t mask = std::size_t{1} << qubit;
    const double scale = 1.0 / std::sqrt(probability);
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        const bool keep = ((i & mask) != 0) == (outcome == 1);
        state.amps[i] = keep ? state.amps[i] * scale : Complex{0.0, 0.0};
    }
    return true;
}

}  // namespace

std::vector<Branch> enumerate_branches(const CircuitProgram& program, const BranchLimits& limits) {
    program.validate();
    std::vector<Branch> done;
    std::vector<PendingBranch> stack;
    stack.push_back(PendingBranch{Statevector(program.num_qubits),
                                  std::vector<std::uint8_t>(program.num_clbits, 0),
                                  {},
                                  1.0,
                                  0});

    while (!stack.empty()) {
        PendingBranch branch = std::move(stack.back());
        stack.pop_back();

        while (branch.next_op < program.ops.size()) {
            const CircuitOp& op = program.ops[branch.next_op];
            ++branch.next_op;

            if (op.kind == OpKind::Measure || op.kind == OpKind::Reset) {
                const int qubit = op.qubits[0];
                const double p1 = branch.state.probability_of_one(qubit);
                const double p0 = 1.0 - p1;

                PendingBranch one_branch;  // only filled when both outcomes survive
                const bool zero_ok = p0 >= limits.prune_threshold;
                const bool one_ok = p1 >= limits.prune_threshold;
                if (one_ok) {
                    one_branch = branch;
                    if (!project(one_branch.state, qubit, 1, p1, limits.prune_threshold))
                        throw std::logic_error("projection disagreed with probability");
                    one_branch.probability *= p1;
                    if (op.kind == OpKind::Measure) {
                        one_branch.clbits[op.clbit] = 1;
                        one_branch.outcome_bits[op.clbit] = 1;
                    } else {
                        // Reset: measured |1>, flip back to |0>.
                        apply_unitary_for_enumeration(one_branch.state, CircuitOp::x(qubit),
                                                      one_branch.clbits);
                    }
                }
                if (zero_ok) {
                    project(branch.state, qubit, 0, p0, limits.prune_threshold);
                    branch.probability *= p0;
                    if (op.kind == OpKind::Measure) {
                        branch.clbits[op.clbit] = 0;
                        branch.outcome_bits[op.clbit] = 0;
                    }
                }
                if (zero_ok && one_ok) {
                    if (done.size() + stack.size() + 2 > limits.max_branches)
                        throw std::runtime_error(
                            "branch count exceeded the cap of " +
                            std::to_string(limits.max_branches) +
                            "; enumerate_branches is meant for few-measurement circuits");
                    stack.push_back(std::move(one_branch));
                } else if (one_ok) {
                    branch = std::move(one_branch);
                } else if (!zero_ok) {
                    branch.probability = 0.0;
                    break;  // both outcomes impossible: numerically dead branch
                }
            } else {
                apply_unitary_for_enumeration(branch.state, op, branch.clbits);
            }
        }

        if (branch.probability >= limits.prune_threshold)
            done.push_back(Branch{std::move(branch.outcome_bits), branch.probability,
                                  std::move(branch.state), std::move(branch.clbits)});
    }
    return done;
}

std::vector<double> exact_distribution(const CircuitProgram& program) {
    program.validate();
    // Split into a gate prefix and a terminal measurement suffix.
    std::size_t first_measure = program.ops.size();
    for (std::size_t i = 0; i < program.ops.size(); ++i) {
        const OpKind kind = program.ops[i].kind;
        if (kind == OpKind::Measure) {
            first_measure = i;
            break;
        }
        if (kind == OpKind::Reset || kind == OpKind::ClassicalIf)
            throw std::invalid_argument(
                "exact_distribution needs a purely unitary circuit; aggregate "
                "enumerate_branches for mid-circuit measurement");
    }
    std::vector<int> measured_qubits;
    std::vector<int> clbit_positions;
    for (std::size_t i = first_measure; i < program.ops.size(); ++i) {
        if (program.ops[i].kind != OpKind::Measure)
            throw std::invalid_argument("measurement must be terminal for exact_distribution");
        measured_qubits.push_back(program.ops[i].qubits[0]);
        clbit_positions.push_back(program.ops[i].clbit);
    }
    if (measured_qubits.empty())
        throw std::invalid_argument("exact_distribution needs terminal measurements");

    Statevector state(program.num_qubits);
    std::vector<std::uint8_t> scratch(program.num_clbits, 0);
    RngStream dummy(0, 0);
    for (std::size_t i = 0; i < first_measure; ++i)
        apply_op(state, program.ops[i], scratch, dummy);

    // Order outcome bits by classical bit index so the distribution indexing
    // matches the shot records.
    int min_clbit = clbit_positions[0];
    for (int c : clbit_positions) min_clbit = std::min(min_clbit, c);
    std::vector<int> qubits_by_clbit(measured_qubits.size(), -1);
    for (std::size_t k = 0; k < measured_qubits.size(); ++k) {
        const std::size_t slot = static_cast<std::size_t>(clbit_positions[k] - min_clbit);
        if (slot >= qubits_by_clbit.size() || qubits_by_clbit[slot] != -1)
            throw std::invalid_argument("terminal measurements must target contiguous distinct "
                                        "classical bits");
        qubits_by_clbit[slot] = measured_qubits[k];
    }
    return state.marginal_probabilities(qubits_by_clbit);
}

}  // namespace onecircuit
