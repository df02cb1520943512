#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "onecircuit/ansatz.hpp"
#include "onecircuit/circuit.hpp"
#include "onecircuit/dataset.hpp"
#include "onecircuit/simulator.hpp"

namespace onecircuit {

/// Parameter-shift rule df/dθ_i = r (f(θ + s e_i) - f(θ - s e_i)).
/// The defaults are exact for RY-generated parameters and a cost that is
/// linear in the outcome probabilities.
struct ShiftRule {
    double multiplier = 0.5;   // r
    double shift = 1.5707963267948966;  // s = pi/2
};

/// Shot budget for the single-circuit estimator: aiming at s shots per cost
/// function requires s' = s (2n+1) shots of the one circuit.
struct ShotPlan {
    std::int64_t shots_per_cost = 0;  // s
    int num_parameters = 0;           // n
    std::int64_t total() const { return shots_per_cost * (2 * num_parameters + 1); }
};

struct GradientReport {
    std::string mode;  // "exact" | "conventional" | "improved" | "classical-ctrl"
    int num_qubits = 0;
    int reps = 0;
    std::vector<double> theta;
    std::int64_t shots_planned = 0;  // total across the dataset; 0 in exact mode
    std::vector<double> gradients;
    double unshifted_cost = 0.0;
    std::optional<std::vector<std::int64_t>> per_index_shots;  // length 2n+1
    std::uint64_t seed = 0;
};

/// One shift block of the single-circuit construction: which parameter it
/// shifts, in which direction, where its five ops start in the program, and
/// which classical bit records its activation.
struct BlockInfo {
    int parameter = 0;
    int sign = +1;  // +1 for +s, -1 for -s
    std::size_t first_op = 0;
    int clbit = -1;
};

struct ImprovedCircuitSpec {
    int data_qubits = 0;       // Q
    int num_parameters = 0;    // n
    int num_cost_functions = 0;  // N = 2n+1
    int ancilla_a = -1;        // starts in |1>, cleared when a block fires
    int ancilla_b = -1;        // the "quantum dice" qubit
    std::vector<double> gammas;    // gamma_j = 2 asin(sqrt(1/(N-j))), j = 0..2n-1
    std::vector<BlockInfo> blocks;  // in global block order (j above)
    std::vector<std::size_t> param_op_index;  // base parameterized gates in the program
    int first_block_clbit = 0;  // block j records into clbit first_block_clbit + j
    int clbit_qa = -1;          // terminal monitor bits; -1 when not measured
    int clbit_qb = -1;
    int num_clbits = 0;

    /// Cost-function index a firing block contributes to (0 is unshifted).
    int cost_index_of_block(int block) const { return block + 1; }
};

struct ImprovedCircuit {
    CircuitProgram program;
    ImprovedCircuitSpec spec;
};

/// Builds the single circuit that samples all 2n+1 cost functions: the base
/// VQC plus two ancillas and, right after each parameterized gate, a +s and
/// a -s shift block of five ops (CRY(gamma_j) a->b, measure b, CRY(±s) b->data,
/// CX b->a, reset b). Every block fires with probability 1/(2n+1).
ImprovedCircuit build_improved_circuit(std::span<const double> x, const AnsatzConfig& config,
                                       const ShiftRule& rule, bool terminal_measurements = true);

/// The 2n+1 base circuits (unshifted first, then +s/-s per parameter)
/// chained into one program with reset rounds in between and a dedicated
/// classical register slice per sub-circuit, Q(2n+1) bits in total.
CircuitProgram build_conventional_stack(std::span<const double> x, const AnsatzConfig& config,
                                        const ShiftRule& rule);

struct DecodedShot {
    int cost_index = 0;    // 0 = unshifted, 2i+1 = +s on parameter i, 2i+2 = -s
    int data_outcome = 0;  // integer read from the data-qubit bits
};

/// Reads which block (if any) fired in one shot. Two or more fired blocks
/// mean the circuit semantics were violated and raise std::logic_error.
DecodedShot decode_shot(const ShotRecord& record, const ImprovedCircuitSpec& spec);

/// Infinite-shot oracle: evaluates every cost function through the exact
/// Born distribution, no sampling anywhere.
GradientReport exact_gradients(const Dataset& data, const AnsatzConfig& config,
                               const ShiftRule& rule);

/// Stacked-circuits estimator: runs each of the 2n+1 parameter settings for
/// exactly shots_per_cost shots per input.
GradientReport conventional_gradients(const Dataset& data, const AnsatzConfig& config,
                                      const ShiftRule& rule, std::int64_t shots_per_cost,
                                      std::uint64_t seed);

struct ImprovedRun {
    GradientReport report;
    /// Shot counts per input and cost-function index (size m x (2n+1)).
    std::vector<std::vector<std::int64_t>> per_input_index_counts;
};

/// Single-circuit estimator: per input, runs the improved circuit for
/// plan.total() shots and buckets them by decoded cost index. An empty
/// bucket raises std::runtime_error naming the starving index.
ImprovedRun improved_run(const Dataset& data, const AnsatzConfig& config, const ShiftRule& rule,
                         const ShotPlan& plan, std::uint64_t seed);

GradientReport improved_gradients(const Dataset& data, const AnsatzConfig& config,
                                  const ShiftRule& rule, const ShotPlan& plan,
                                  std::uint64_t seed);

/// Variant that replaces the ancilla machinery with a classical pre-shot
/// draw of the cost index and classically conditioned RY(±s) gates; same
/// estimator, different randomness source.
ImprovedRun classical_control_run(const Dataset& data, const AnsatzConfig& config,
                                  const ShiftRule& rule, const ShotPlan& plan,
                                  std::uint64_t seed);

GradientReport classical_control_gradients(const Dataset& data, const AnsatzConfig& config,
                                           const ShiftRule& rule, const ShotPlan& plan,
                                           std::uint64_t seed);

/// Program used by the classical-control variant, for resource inspection.
/// Activation bits (one per block) are preset before each shot.
ImprovedCircuit build_classical_control_circuit(std::span<const double> x,
                                                const AnsatzConfig& config,
                                                const ShiftRule& rule);

struct BranchOracleReport {
    bool passed = false;
    int branch_count = 0;
    int expected_branches = 0;
    double max_probability_error = 0.0;    // vs 1/N
    double max_distribution_error = 0.0;   // vs the matching shifted plain VQC
    std::string detail;                    // first failure, when any
};

/// Exhaustive consistency check of the improved circuit against plain
/// shifted circuits: exactly N branches, each of probability 1/N, and each
/// branch's conditional data distribution equal to the matching shifted (or
/// unshifted) VQC.
BranchOracleReport branch_oracle_check(std::span<const double> x, const AnsatzConfig& config,
                                       const ShiftRule& rule, double tolerance = 1e-10);

/// Generalizes one block to a gate outside RY(θ+s) = RY(s)RY(θ): replaces its
/// CRY(±s) with controlled inverse_gate then controlled shifted_gate, both
/// controlled by the dice ancilla. inverse_gate must invert the base gate
/// currently at the block's parameter position (product within 1e-10 of I).
ImprovedCircuit general_shift_insertion(const ImprovedCircuit& circuit, int block_index,
                                        const Matrix2& inverse_gate, const Matrix2& shifted_gate);

/// Swaps the parameterized base gate of the given parameter for an arbitrary
/// single-qubit unitary (used together with general_shift_insertion).
ImprovedCircuit substitute_base_gate(const ImprovedCircuit& circuit, int parameter,
                                     const Matrix2& gate);

/// theta with entry i shifted by signed_shift.
std::vector<double> shifted_theta(std::span<const double> theta, int parameter,
                                  double signed_shift);

}  // namespace onecircuit
