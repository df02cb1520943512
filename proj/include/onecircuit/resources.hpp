#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "onecircuit/ansatz.hpp"
#include "onecircuit/circuit.hpp"

namespace onecircuit {

/// Greedy as-soon-as-possible layer count: every op occupies one layer on
/// each qubit and classical bit it touches.
int measure_depth(const CircuitProgram& program);

struct ResourceReport {
    int data_qubits = 0;      // Q
    int reps = 0;             // r
    int num_parameters = 0;   // n = Q(r+1)
    int feature_map_depth = 0;

    // Modeled quantities.
    int base_depth = 0;            // Λ: one cost evaluation, feature map included
    int per_rep_depth = 0;         // Δ: depth added by one ansatz repetition
    int fixed_depth = 0;           // Λ₀ = Λ - rΔ
    double depth_per_parameter = 0.0;  // λ = Λ/n
    std::int64_t depth_conventional = 0;  // D_conv = Λ(2n+1)
    std::int64_t depth_improved = 0;      // D_impr = Λ + 10n
    int clbits_conventional = 0;   // N_conv = Q(2n+1)
    int clbits_improved = 0;       // N_impr = Q + 2n + 2

    // Measured on constructed circuits.
    int measured_base_depth = 0;       // feature-map placeholder counted as 1 layer
    int measured_improved_depth = 0;   // adjusted for the configured feature-map depth
    int measured_stack_clbits = 0;
    int measured_improved_clbits = 0;
    std::int64_t base_op_count = 0;
    std::int64_t improved_op_count = 0;
    std::int64_t gadget_ops_added = 0;  // shift-block ops only; 10n by construction

    // Cross-check flags (diagnostic; depth checks are bounds because they
    // depend on the layering metric, op and width checks are equalities).
    bool param_count_ok = false;
    bool gadget_ops_ok = false;       // gadget_ops_added == 10n
    bool clbits_ok = false;           // measured widths == modeled widths
    bool improved_depth_bound_ok = false;  // measured ∈ [10n, Λ + 10n]
};

/// Evaluates the depth/width/shot formulas for the given ansatz and checks
/// them against actually constructed circuits.
ResourceReport model_resources(const AnsatzConfig& config, int feature_map_depth);

/// λ(n) = (Λ₀ - Δ)/n + Δ/Q for each n; converges monotonically to Δ/Q.
std::vector<double> lambda_asymptote(double per_rep_depth, int data_qubits, double fixed_depth,
                                     std::span<const std::int64_t> n_values);

}  // namespace onecircuit
