#include <doctest.h>

#include <cmath>
#include <numbers>

#include "onecircuit/branches.hpp"
#include "onecircuit/gradients.hpp"
#include "onecircuit/rng.hpp"

using namespace onecircuit;

namespace {

Dataset single_input(std::vector<double> x, int label) {
    Dataset data;
    data.inputs.push_back(std::move(x));
    data.labels.push_back(label);
    return data;
}

AnsatzConfig random_config(int qubits, int reps, RngStream& rng) {
    AnsatzConfig config;
    config.num_qubits = qubits;
    config.reps = reps;
    config.theta.resize(static_cast<std::size_t>(config.num_parameters()));
    for (double& t : config.theta) t = rng.next_double() * std::numbers::pi;
    return config;
}

Dataset random_dataset_for(int qubits, std::size_t count, RngStream& rng) {
    Dataset data;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> x(std::size_t{1} << qubits);
        for (double& v : x) v = rng.next_double() + 0.05;
        data.inputs.push_back(std::move(x));
        data.labels.push_back(2);
    }
    return data;
}

/// Independent derivative oracle: central finite differences of the exact
/// cost, evaluated through exact_distribution only.
double finite_difference(const Dataset& data, const AnsatzConfig& config, int parameter,
                         double epsilon) {
    auto cost_at = [&](const std::vector<double>& theta) {
        AnsatzConfig probe = config;
        probe.theta = theta;
        double total = 0.0;
        for (std::size_t m = 0; m < data.size(); ++m) {
            const auto program = build_base_vqc(data.inputs[m], probe);
            total += cost_from_distribution(exact_distribution(program), data.labels[m]);
        }
        return total / static_cast<double>(data.size());
    };
    const double up = cost_at(shifted_theta(config.theta, parameter, epsilon));
    const double down = cost_at(shifted_theta(config.theta, parameter, -epsilon));
    return (up - down) / (2 * epsilon);
}

}  // namespace

TEST_CASE("single-RY closed form: gradient is -sin(theta)") {
    // Encoding (1,0) gives |0>; with label 1 the cost is 2(1 - sin^2(theta/2))
    // = 1 + cos(theta), so the derivative is -sin(theta).
    const Dataset data = single_input({1.0, 0.0}, 1);
    for (double theta : {0.0, 0.3, std::numbers::pi / 3, 1.9, -2.5}) {
        AnsatzConfig config;
        config.num_qubits = 1;
        config.reps = 0;
        config.theta = {theta};
        const GradientReport report = exact_gradients(data, config, ShiftRule{});
        REQUIRE(report.gradients.size() == 1);
        CHECK(report.gradients[0] == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
        CHECK(report.unshifted_cost == doctest::Approx(1 + std::cos(theta)).epsilon(1e-12));
    }
}

TEST_CASE("exact gradients match central finite differences within 1e-8") {
    RngStream rng(17, 0);
    for (int instance = 0; instance < 10; ++instance) {
        const AnsatzConfig config = random_config(3, 1, rng);
        const Dataset data = random_dataset_for(3, 2, rng);
        const GradientReport report = exact_gradients(data, config, ShiftRule{});
        for (int i = 0; i < config.num_parameters(); ++i) {
            const double fd = finite_difference(data, config, i, 1e-5);
            CHECK(std::abs(report.gradients[i] - fd) < 1e-8);
        }
    }
}

TEST_CASE("gradients are 2-pi periodic") {
    RngStream rng(23, 0);
    const AnsatzConfig config = random_config(3, 1, rng);
    const Dataset data = random_dataset_for(3, 2, rng);
    const GradientReport base = exact_gradients(data, config, ShiftRule{});
    for (int i = 0; i < config.num_parameters(); ++i) {
        AnsatzConfig shifted = config;
        shifted.theta[i] += 2 * std::numbers::pi;
        const GradientReport moved = exact_gradients(data, shifted, ShiftRule{});
        for (int k = 0; k < config.num_parameters(); ++k)
            CHECK(std::abs(moved.gradients[k] - base.gradients[k]) < 1e-10);
    }
}

TEST_CASE("gradient vanishes at a shift-symmetric point") {
    // Q=1, r=0 encoding |0> with label matching the encoded basis index:
    // theta = 0 is stationary.
    const Dataset data = single_input({1.0, 0.0}, 0);
    AnsatzConfig config;
    config.num_qubits = 1;
    config.reps = 0;
    config.theta = {0.0};
    const GradientReport report = exact_gradients(data, config, ShiftRule{});
    CHECK(std::abs(report.gradients[0]) < 1e-12);
}

TEST_CASE("conventional estimator converges to the closed form") {
    const Dataset data = single_input({1.0, 0.0}, 1);
    AnsatzConfig config;
    config.num_qubits = 1;
    config.reps = 0;
    config.theta = {std::numbers::pi / 3};

    const std::int64_t shots = 4000;
    const GradientReport report = conventional_gradients(data, config, ShiftRule{}, shots, 5);
    const double tolerance = 5 * std::sqrt(2.0) / std::sqrt(static_cast<double>(shots));
    CHECK(std::abs(report.gradients[0] - (-std::sin(std::numbers::pi / 3))) < tolerance);
    CHECK(report.shots_planned == shots * 3);
    REQUIRE(report.per_index_shots.has_value());
    CHECK(report.per_index_shots->size() == 3);
    CHECK(report.per_index_shots->at(0) == shots);
}

TEST_CASE("the stacked program reproduces every sub-circuit's distribution") {
    // Fig-2-style stack: 2n+1 settings chained with reset rounds and disjoint
    // classical registers. Each register's sampled marginal must match the
    // standalone circuit of its setting.
    RngStream rng(41, 0);
    const AnsatzConfig config = random_config(2, 0, rng);
    const std::vector<double> x = {0.8, 0.3, 0.5, 0.9};
    const ShiftRule rule;
    const CircuitProgram stack = build_conventional_stack(x, config, rule);
    const int settings = 2 * config.num_parameters() + 1;
    REQUIRE(stack.num_clbits == config.num_qubits * settings);

    const std::int64_t shots = 4000;
    std::vector<std::vector<std::int64_t>> counts(
        settings, std::vector<std::int64_t>(4, 0));
    for_each_shot(stack, shots, 42, [&](std::int64_t, const ShotRecord& record) {
        for (int k = 0; k < settings; ++k)
            ++counts[k][record.bits[2 * k] | (record.bits[2 * k + 1] << 1)];
    });

    for (int k = 0; k < settings; ++k) {
        AnsatzConfig setting = config;
        const int parameter = (k - 1) / 2;
        if (k > 0)
            setting.theta = shifted_theta(config.theta, parameter,
                                          (k % 2 == 1 ? 1.0 : -1.0) * rule.shift);
        const auto expected = exact_distribution(build_base_vqc(x, setting));
        for (std::size_t o = 0; o < expected.size(); ++o) {
            const double p = expected[o];
            const double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / shots);
            CHECK(std::abs(counts[k][o] / double(shots) - p) < 5 * sigma + 1e-9);
        }
    }
}

TEST_CASE("conventional estimator is deterministic under seed and rejects zero shots") {
    RngStream rng(31, 0);
    const AnsatzConfig config = random_config(2, 1, rng);
    const Dataset data = random_dataset_for(2, 2, rng);
    const GradientReport a = conventional_gradients(data, config, ShiftRule{}, 200, 9);
    const GradientReport b = conventional_gradients(data, config, ShiftRule{}, 200, 9);
    CHECK(a.gradients == b.gradients);
    CHECK_THROWS_AS(conventional_gradients(data, config, ShiftRule{}, 0, 9),
                    std::invalid_argument);
}
