#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "onecircuit/circuit.hpp"
#include "onecircuit/statevector.hpp"

namespace onecircuit {

/// One measurement-outcome history of a program with mid-circuit
/// measurements: its recorded bits, total probability, and normalized
/// conditional final state.
struct Branch {
    std::map<int, int> outcome_bits;  // clbit index -> recorded outcome
    double probability = 0.0;
    Statevector final_state;
    std::vector<std::uint8_t> clbits;  // full classical register at the end
};

struct BranchLimits {
    double prune_threshold = 1e-14;  // branches below this probability are dropped
    std::size_t max_branches = 4096;
};

/// Exact expansion of the program into all surviving measurement branches.
/// Probabilities over the returned branches sum to 1 (up to pruning).
std::vector<Branch> enumerate_branches(const CircuitProgram& program,
                                       const BranchLimits& limits = {});

/// Infinite-shot Born distribution of a unitary program with terminal
/// measurements: applies every gate, then returns the exact distribution
/// over the measured qubits, with each qubit's bit placed at its classical
/// bit position. Mid-circuit measurement or reset is an error; aggregate
/// over enumerate_branches instead.
std::vector<double> exact_distribution(const CircuitProgram& program);

}  // namespace onecircuit
