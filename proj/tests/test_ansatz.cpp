#include <doctest.h>

#include <cmath>

#include "onecircuit/ansatz.hpp"
#include "onecircuit/branches.hpp"

using namespace onecircuit;

namespace {

AnsatzConfig make_config(int qubits, int reps, double fill = 0.0) {
    AnsatzConfig config;
    config.num_qubits = qubits;
    config.reps = reps;
    config.theta.assign(static_cast<std::size_t>(config.num_parameters()), fill);
    return config;
}

int count_kind(const std::vector<CircuitOp>& ops, OpKind kind) {
    int count = 0;
    for (const auto& op : ops) count += op.kind == kind;
    return count;
}

}  // namespace

TEST_CASE("RealAmplitudes gate counts") {
    const AnsatzCircuit one_rep = build_ansatz(make_config(3, 1));
    CHECK(count_kind(one_rep.ops, OpKind::RY) == 6);
    CHECK(count_kind(one_rep.ops, OpKind::CX) == 3);

    const AnsatzCircuit two_reps = build_ansatz(make_config(3, 2));
    CHECK(count_kind(two_reps.ops, OpKind::RY) == 9);
    CHECK(count_kind(two_reps.ops, OpKind::CX) == 6);

    const AnsatzCircuit degenerate = build_ansatz(make_config(1, 0));
    CHECK(degenerate.ops.size() == 1);
    CHECK(degenerate.ops[0].kind == OpKind::RY);
}

TEST_CASE("parameter count and CX structure over the (Q, r) grid") {
    for (int q = 1; q <= 6; ++q) {
        for (int r = 0; r <= 3; ++r) {
            const AnsatzConfig config = make_config(q, r);
            const AnsatzCircuit circuit = build_ansatz(config);
            CHECK(config.num_parameters() == q * (r + 1));
            CHECK(count_kind(circuit.ops, OpKind::RY) == q * (r + 1));
            CHECK(count_kind(circuit.ops, OpKind::CX) == r * q * (q - 1) / 2);
            CHECK(circuit.param_op_index.size() == static_cast<std::size_t>(q * (r + 1)));
            for (const auto& op : circuit.ops)
                if (op.kind == OpKind::CX) CHECK(op.qubits[0] < op.qubits[1]);
        }
    }
}

TEST_CASE("recorded parameter positions point at the right RY gates") {
    AnsatzConfig config = make_config(3, 2);
    for (std::size_t i = 0; i < config.theta.size(); ++i)
        config.theta[i] = 0.1 * static_cast<double>(i + 1);
    const AnsatzCircuit circuit = build_ansatz(config);
    for (std::size_t i = 0; i < config.theta.size(); ++i) {
        const CircuitOp& op = circuit.ops[circuit.param_op_index[i]];
        CHECK(op.kind == OpKind::RY);
        CHECK(op.angle == config.theta[i]);
        CHECK(op.qubits[0] == static_cast<int>(i) % 3);
    }
}

TEST_CASE("base VQC on a basis input with zero angles is deterministic") {
    // RY(0) is the identity and CX permutes basis states, so the output
    // distribution stays one-hot; checked through the exact oracle.
    std::vector<double> x(8, 0.0);
    x[5] = 1.0;
    const CircuitProgram program = build_base_vqc(x, make_config(3, 1));
    CHECK(program.num_clbits == 3);

    const auto dist = exact_distribution(program);
    int ones = 0;
    for (double p : dist) {
        if (p > 0.5) ++ones;
        CHECK((p < 1e-12 || p > 1 - 1e-12));
    }
    CHECK(ones == 1);
}

TEST_CASE("base VQC distribution is normalized for arbitrary angles") {
    const std::vector<double> x = {0.2, 0.9, 0.1, 0.8, 0.7, 0.3, 0.6, 0.4};
    const CircuitProgram program = build_base_vqc(x, make_config(3, 1, 0.77));
    const auto dist = exact_distribution(program);
    double total = 0.0;
    for (double p : dist) total += p;
    CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("config validation rejects bad shapes") {
    AnsatzConfig config = make_config(3, 1);
    config.theta.pop_back();
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    CHECK_THROWS_AS(build_base_vqc(std::vector<double>(4, 1.0), make_config(3, 1)),
                    std::invalid_argument);
}

TEST_CASE("cost examples") {
    std::vector<double> onehot(8, 0.0);
    onehot[2] = 1.0;
    CHECK(cost_from_distribution(onehot, 2) == doctest::Approx(0.0));

    const std::vector<double> uniform(8, 0.125);
    CHECK(cost_from_distribution(uniform, 5) == doctest::Approx(1.75));

    std::vector<double> mixed(8, 0.4 / 7);
    mixed[3] = 0.6;
    CHECK(cost_from_distribution(mixed, 3) == doctest::Approx(0.8));
}

TEST_CASE("cost is linear in the distribution") {
    const std::vector<double> a = {0.5, 0.25, 0.125, 0.125};
    const std::vector<double> b = {0.1, 0.2, 0.3, 0.4};
    for (double w : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        std::vector<double> blend(4);
        for (std::size_t i = 0; i < 4; ++i) blend[i] = w * a[i] + (1 - w) * b[i];
        const double expected =
            w * cost_from_distribution(a, 1) + (1 - w) * cost_from_distribution(b, 1);
        CHECK(cost_from_distribution(blend, 1) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("cost rejects bad labels and non-distributions") {
    const std::vector<double> uniform(4, 0.25);
    CHECK_THROWS_AS(cost_from_distribution(uniform, 4), std::invalid_argument);
    CHECK_THROWS_AS(cost_from_distribution(uniform, -1), std::invalid_argument);
    const std::vector<double> broken = {0.5, 0.2, 0.1, 0.1};
    CHECK_THROWS_AS(cost_from_distribution(broken, 0), std::invalid_argument);
}
