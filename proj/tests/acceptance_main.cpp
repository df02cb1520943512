// End-to-end acceptance suite. Each criterion prints one line:
//   [PASS|FAIL] criterion <k>: <summary>
// and the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "onecircuit/branches.hpp"
#include "onecircuit/encoding.hpp"
#include "onecircuit/gradients.hpp"
#include "onecircuit/resources.hpp"
#include "onecircuit/rng.hpp"
#include "onecircuit/stats.hpp"

using namespace onecircuit;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& summary) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, summary.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

AnsatzConfig random_instance(int qubits, int reps, std::uint64_t seed,
                             std::vector<double>& x_out) {
    AnsatzConfig config;
    config.num_qubits = qubits;
    config.reps = reps;
    config.theta.resize(static_cast<std::size_t>(config.num_parameters()));
    RngStream rng(seed, 0x7e57);
    for (double& t : config.theta) t = rng.next_double() * std::numbers::pi;
    x_out.resize(std::size_t{1} << qubits);
    for (double& v : x_out) v = rng.next_double() + 0.01;  // bounded away from the zero vector
    return config;
}

AnsatzConfig random_config_for_data(int qubits, int reps, std::uint64_t seed) {
    std::vector<double> ignored;
    return random_instance(qubits, reps, seed, ignored);
}

// ---- criterion 1: branch-oracle equivalence --------------------------------

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string fail;
    for (std::uint64_t instance = 0; instance < 10 && ok; ++instance) {
        std::vector<double> x;
        const AnsatzConfig config = random_instance(3, 1, 100 + instance, x);
        const BranchOracleReport oracle = branch_oracle_check(x, config, ShiftRule{}, 1e-10);
        if (!oracle.passed) {
            ok = false;
            fail = " instance " + std::to_string(instance) + ": " + oracle.detail;
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) {
        ok = false;
        fail += " (runtime budget of 10 s exceeded)";
    }
    report(1, ok,
           "branch oracle: 10 instances, 13 uniform branches matching shifted circuits "
           "within 1e-10 (" +
               std::to_string(elapsed) + " s)" + fail);
}

// ---- criterion 2: estimator agreement --------------------------------------

void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    const std::int64_t s = 4000;
    const double tolerance = 5 * std::sqrt(2.0) / std::sqrt(static_cast<double>(s));
    int conventional_good = 0;
    int improved_good = 0;
    int total = 0;

    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const AnsatzConfig config = random_config_for_data(3, 1, 200 + trial);
        const Dataset data = generate_random_dataset(5, 8, 300 + trial);
        const GradientReport exact = exact_gradients(data, config, ShiftRule{});
        const GradientReport conventional =
            conventional_gradients(data, config, ShiftRule{}, s, 400 + trial);
        const GradientReport improved = improved_gradients(
            data, config, ShiftRule{}, ShotPlan{s, config.num_parameters()}, 500 + trial);
        for (int i = 0; i < config.num_parameters(); ++i) {
            ++total;
            conventional_good +=
                std::abs(conventional.gradients[i] - exact.gradients[i]) < tolerance;
            improved_good += std::abs(improved.gradients[i] - exact.gradients[i]) < tolerance;
        }
    }
    const double elapsed = seconds_since(start);
    const double conv_frac = static_cast<double>(conventional_good) / total;
    const double impr_frac = static_cast<double>(improved_good) / total;
    const bool ok = conv_frac >= 0.99 && impr_frac >= 0.99 && elapsed < 120.0;
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "estimator agreement at s=4000, tol %.4f: conventional %d/%d, improved "
                  "%d/%d within tolerance (%.1f s)",
                  tolerance, conventional_good, total, improved_good, total, elapsed);
    report(2, ok, buffer);
}

// ---- criterion 3: shift rule equals finite differences ---------------------

double exact_mean_cost(const Dataset& data, const AnsatzConfig& config) {
    double total = 0.0;
    for (std::size_t m = 0; m < data.size(); ++m) {
        const auto program = build_base_vqc(data.inputs[m], config);
        total += cost_from_distribution(exact_distribution(program), data.labels[m]);
    }
    return total / static_cast<double>(data.size());
}

void criterion_3() {
    const double epsilon = 1e-5;
    double worst = 0.0;
    for (std::uint64_t instance = 0; instance < 10; ++instance) {
        const AnsatzConfig config = random_config_for_data(3, 1, 600 + instance);
        const Dataset data = generate_random_dataset(2, 8, 700 + instance);
        const GradientReport exact = exact_gradients(data, config, ShiftRule{});
        for (int i = 0; i < config.num_parameters(); ++i) {
            AnsatzConfig up = config;
            up.theta[i] += epsilon;
            AnsatzConfig down = config;
            down.theta[i] -= epsilon;
            const double fd =
                (exact_mean_cost(data, up) - exact_mean_cost(data, down)) / (2 * epsilon);
            worst = std::max(worst, std::abs(fd - exact.gradients[i]));
        }
    }
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer),
                  "parameter-shift vs central differences: max deviation %.3g (limit 1e-8)",
                  worst);
    report(3, worst < 1e-8, buffer);
}

// ---- criterion 4: shot-count statistics ------------------------------------

void criterion_4() {
    const auto start = std::chrono::steady_clock::now();
    const AnsatzConfig config = random_config_for_data(3, 1, 800);
    const Dataset data = generate_random_dataset(20, 8, 801);
    const ShotPlan plan{500, config.num_parameters()};
    const ImprovedRun run = improved_run(data, config, ShiftRule{}, plan, 802);

    std::vector<std::int64_t> cells;
    for (const auto& row : run.per_input_index_counts)
        for (std::int64_t c : row) cells.push_back(c);
    const double cell_mean = mean(cells);
    const double relative_std = sample_std(cells) / cell_mean;
    const bool uniform = chi_square_uniform_test(*run.report.per_index_shots, 0.001);
    const double elapsed = seconds_since(start);

    const bool ok = std::abs(cell_mean - 500.0) < 1e-9 && relative_std >= 0.026 &&
                    relative_std <= 0.069 && uniform && elapsed < 60.0;
    char buffer[224];
    std::snprintf(buffer, sizeof(buffer),
                  "shot statistics s=500, m=20: mean %.1f, std/mean %.2f%% (band [2.6%%, "
                  "6.9%%]), uniformity %s (%.1f s)",
                  cell_mean, 100 * relative_std, uniform ? "passed" : "failed", elapsed);
    report(4, ok, buffer);
}

// ---- criterion 5: resource formulas -----------------------------------------

void criterion_5() {
    bool ok = true;
    std::string fail;
    for (int q = 1; q <= 5 && ok; ++q)
        for (int r = 0; r <= 3 && ok; ++r) {
            AnsatzConfig config;
            config.num_qubits = q;
            config.reps = r;
            config.theta.assign(static_cast<std::size_t>(config.num_parameters()), 0.4);
            const ResourceReport resources = model_resources(config, 1);
            const int n = q * (r + 1);
            if (resources.num_parameters != n || !resources.param_count_ok ||
                resources.gadget_ops_added != 10 * n ||
                resources.measured_improved_clbits != q + 2 * n + 2 ||
                resources.measured_stack_clbits != q * (2 * n + 1)) {
                ok = false;
                fail = " at Q=" + std::to_string(q) + ", r=" + std::to_string(r);
            }
        }
    report(5, ok,
           "resource formulas over Q in 1..5, r in 0..3: overhead = 10n, widths Q+2n+2 and "
           "Q(2n+1), n = Q(r+1)" +
               fail);
}

// ---- criterion 6: at-most-one activation ------------------------------------

void criterion_6() {
    std::vector<double> x;
    const AnsatzConfig config = random_instance(3, 1, 900, x);
    const ImprovedCircuit circuit = build_improved_circuit(x, config, ShiftRule{});
    const std::int64_t shots = 100000;
    std::int64_t violations = 0;
    for_each_shot(circuit.program, shots, 901, [&](std::int64_t, const ShotRecord& record) {
        int fired = 0;
        for (int b = 0; b < 2 * circuit.spec.num_parameters; ++b)
            fired += record.bits[circuit.spec.first_block_clbit + b];
        violations += fired > 1;
    });
    report(6, violations == 0,
           "at-most-one activation over " + std::to_string(shots) + " shots: " +
               std::to_string(violations) + " violations");
}

// ---- criterion 7: general-shift extension -----------------------------------

std::vector<double> fired_branch_distribution(const ImprovedCircuit& circuit, int block_index) {
    const auto branches = enumerate_branches(circuit.program);
    const int clbit = circuit.spec.blocks[block_index].clbit;
    std::vector<int> data_qubits(circuit.spec.data_qubits);
    for (int i = 0; i < circuit.spec.data_qubits; ++i) data_qubits[i] = i;
    for (const Branch& branch : branches)
        if (branch.outcome_bits.count(clbit) && branch.outcome_bits.at(clbit) == 1)
            return branch.final_state.marginal_probabilities(data_qubits);
    throw std::logic_error("no branch fired block " + std::to_string(block_index));
}

void criterion_7() {
    const Matrix2 pauli_x = {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}};
    std::vector<double> x;
    const AnsatzConfig config = random_instance(2, 1, 1000, x);
    const ShiftRule rule;
    const ImprovedCircuit standard = build_improved_circuit(x, config, rule, false);
    double worst_ry = 0.0;
    double worst_composite = 0.0;

    // U' = RY degenerates to the standard construction.
    for (std::size_t b = 0; b < standard.spec.blocks.size(); ++b) {
        const BlockInfo& block = standard.spec.blocks[b];
        const double theta = config.theta[block.parameter];
        const ImprovedCircuit general =
            general_shift_insertion(standard, static_cast<int>(b), adjoint(ry_matrix(theta)),
                                    ry_matrix(theta + block.sign * rule.shift));
        const auto got = fired_branch_distribution(general, static_cast<int>(b));
        const auto want = fired_branch_distribution(standard, static_cast<int>(b));
        for (std::size_t o = 0; o < want.size(); ++o)
            worst_ry = std::max(worst_ry, std::abs(got[o] - want[o]));
    }

    // A composite U'(theta) = RY(theta) X must land on direct substitution.
    const int parameter = 0;
    const double theta = config.theta[parameter];
    auto composite = [&](double angle) { return matmul(ry_matrix(angle), pauli_x); };
    ImprovedCircuit general = substitute_base_gate(standard, parameter, composite(theta));
    for (int b : {0, 1})
        general = general_shift_insertion(general, b, adjoint(composite(theta)),
                                          composite(theta + general.spec.blocks[b].sign *
                                                                rule.shift));
    for (int b : {0, 1}) {
        const double sign = general.spec.blocks[b].sign;
        ImprovedCircuit reference =
            substitute_base_gate(standard, parameter, composite(theta + sign * rule.shift));
        // Unfired branches of the reference carry the substituted gate alone,
        // so compare against its no-activation branch.
        const auto branches = enumerate_branches(reference.program);
        std::vector<int> data_qubits(reference.spec.data_qubits);
        for (int i = 0; i < reference.spec.data_qubits; ++i) data_qubits[i] = i;
        std::vector<double> want;
        for (const Branch& branch : branches) {
            bool any_fired = false;
            for (const auto& [bit, value] : branch.outcome_bits) any_fired |= value == 1;
            if (!any_fired) want = branch.final_state.marginal_probabilities(data_qubits);
        }
        const auto got = fired_branch_distribution(general, b);
        for (std::size_t o = 0; o < want.size(); ++o)
            worst_composite = std::max(worst_composite, std::abs(got[o] - want[o]));
    }

    char buffer[192];
    std::snprintf(buffer, sizeof(buffer),
                  "general shift: RY degeneration max dev %.3g, composite substitution max "
                  "dev %.3g (limit 1e-10)",
                  worst_ry, worst_composite);
    report(7, worst_ry < 1e-10 && worst_composite < 1e-10, buffer);
}

// ---- criterion 8: classical-control variant ----------------------------------

void criterion_8() {
    const std::int64_t s = 4000;
    const double tolerance = 5 * std::sqrt(2.0) / std::sqrt(static_cast<double>(s));
    int good = 0;
    int total = 0;
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const AnsatzConfig config = random_config_for_data(3, 1, 1100 + trial);
        const Dataset data = generate_random_dataset(5, 8, 1200 + trial);
        const GradientReport exact = exact_gradients(data, config, ShiftRule{});
        const GradientReport estimate = classical_control_gradients(
            data, config, ShiftRule{}, ShotPlan{s, config.num_parameters()}, 1300 + trial);
        for (int i = 0; i < config.num_parameters(); ++i) {
            ++total;
            good += std::abs(estimate.gradients[i] - exact.gradients[i]) < tolerance;
        }
    }

    const AnsatzConfig config = random_config_for_data(3, 1, 1100);
    const Dataset data = generate_random_dataset(1, 8, 1200);
    const ImprovedCircuit variant =
        build_classical_control_circuit(data.inputs[0], config, ShiftRule{});
    const CircuitProgram base = build_base_vqc(data.inputs[0], config);
    const std::int64_t per_parameter =
        static_cast<std::int64_t>(variant.program.size() - base.size()) /
        config.num_parameters();

    const bool ok = static_cast<double>(good) / total >= 0.99 && per_parameter < 10;
    char buffer[192];
    std::snprintf(buffer, sizeof(buffer),
                  "classical control: %d/%d gradients within %.4f, op overhead %lld "
                  "ops/parameter (limit 10)",
                  good, total, tolerance, static_cast<long long>(per_parameter));
    report(8, ok, buffer);
}

// ---- criterion 9: scale check ------------------------------------------------

void criterion_9() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string note;
    try {
        const AnsatzConfig config = random_config_for_data(10, 2, 1400);
        const Dataset data = generate_random_dataset(2, 1024, 1401);
        const ShotPlan plan{100, config.num_parameters()};
        const ImprovedRun run = improved_run(data, config, ShiftRule{}, plan, 1402);

        std::int64_t total_shots = 0;
        for (const auto& row : run.per_input_index_counts)
            for (std::int64_t c : row) total_shots += c;
        ok = config.num_parameters() == 30 && run.report.gradients.size() == 30 &&
             total_shots == plan.total() * 2 &&
             run.report.shots_planned == plan.total() * 2;
        note = "n=30 on 12 qubits, " + std::to_string(total_shots) + " shots";
    } catch (const std::exception& e) {
        ok = false;
        note = std::string("threw: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 600.0) ok = false;
    char buffer[192];
    std::snprintf(buffer, sizeof(buffer), "scale check (Q=10, r=2, s=100, m=2): %s (%.1f s, "
                                          "limit 600 s)",
                  note.c_str(), elapsed);
    report(9, ok, buffer);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
