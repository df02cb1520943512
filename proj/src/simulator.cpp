#include "onecircuit/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace onecircuit {

namespace {

constexpr double kImpossibleProbability = 1e-14;

void apply_single_qubit(Statevector& state, int qubit, const Matrix2& u) {
    const std::size_t mask = std::size_t{1} << qubit;
    auto& amps = state.amps;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) continue;
        const Complex a = amps[i];
        const Complex b = amps[i | mask];
        amps[i] = u[0] * a + u[1] * b;
        amps[i | mask] = u[2] * a + u[3] * b;
    }
}

void apply_controlled_single_qubit(Statevector& state, int control, int target,
                                   const Matrix2& u) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    auto& amps = state.amps;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) == 0 || (i & tmask)) continue;
        const Complex a = amps[i];
        const Complex b = amps[i | tmask];
        amps[i] = u[0] * a + u[1] * b;
        amps[i | tmask] = u[2] * a + u[3] * b;
    }
}

void apply_x(Statevector& state, int qubit) {
    const std::size_t mask = std::size_t{1} << qubit;
    auto& amps = state.amps;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if ((i & mask) == 0) std::swap(amps[i], amps[i | mask]);
}

void apply_cx(Statevector& state, int control, int target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    auto& amps = state.amps;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if ((i & cmask) && (i & tmask) == 0) std::swap(amps[i], amps[i | tmask]);
}

void apply_state_prep(Statevector& state, const CircuitOp& op) {
    std::size_t targets_mask = 0;
    for (int q : op.qubits) targets_mask |= std::size_t{1} << q;
    auto& amps = state.amps;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if ((i & targets_mask) && std::norm(amps[i]) > 0.0)
            throw std::runtime_error("state_prep targets must be in |0>");
    // Tensor the prepared amplitudes onto the |0...0> slice of the targets.
    for (std::size_t i = amps.size(); i-- > 0;) {
        if (i & targets_mask) continue;
        const Complex base = amps[i];
        if (std::norm(base) == 0.0) continue;
        for (std::size_t outcome = 0; outcome < op.prep_amplitudes.size(); ++outcome) {
            std::size_t scattered = 0;
            for (std::size_t k = 0; k < op.qubits.size(); ++k)
                scattered |= ((outcome >> k) & 1u) << op.qubits[k];
            amps[i | scattered] = base * op.prep_amplitudes[outcome];
        }
    }
}

/// Projects onto the given outcome of the qubit and renormalizes.
void collapse(Statevector& state, int qubit, int outcome, double probability) {
    if (probability < kImpossibleProbability)
        throw std::runtime_error("post-measurement probability " + std::to_string(probability) +
                                 " below 1e-14; state is numerically corrupt");
    const std::size_t mask = std::size_t{1} << qubit;
    const double scale = 1.0 / std::sqrt(probability);
    auto& amps = state.amps;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const bool keep = ((i & mask) != 0) == (outcome == 1);
        amps[i] = keep ? amps[i] * scale : Complex{0.0, 0.0};
    }
}

int measure_qubit(Statevector& state, int qubit, RngStream& rng) {
    const double p1 = state.probability_of_one(qubit);
    const int outcome = rng.next_double() < p1 ? 1 : 0;
    collapse(state, qubit, outcome, outcome == 1 ? p1 : 1.0 - p1);
    return outcome;
}

}  // namespace

void apply_op(Statevector& state, const CircuitOp& op, std::vector<std::uint8_t>& clbits,
              RngStream& rng) {
    for (int q : op.qubits)
        if (q < 0 || q >= state.num_qubits)
            throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
    switch (op.kind) {
        case OpKind::StatePrep:
            apply_state_prep(state, op);
            break;
        case OpKind::RY:
            apply_single_qubit(state, op.qubits[0], ry_matrix(op.angle));
            break;
        case OpKind::CRY:
            apply_controlled_single_qubit(state, op.qubits[0], op.qubits[1],
                                          ry_matrix(op.angle));
            break;
        case OpKind::CX:
            apply_cx(state, op.qubits[0], op.qubits[1]);
            break;
        case OpKind::X:
            apply_x(state, op.qubits[0]);
            break;
        case OpKind::Unitary1q:
            apply_single_qubit(state, op.qubits[0], op.matrix);
            break;
        case OpKind::ControlledUnitary1q:
            apply_controlled_single_qubit(state, op.qubits[0], op.qubits[1], op.matrix);
            break;
        case OpKind::Measure: {
            if (op.clbit < 0 || op.clbit >= static_cast<int>(clbits.size()))
                throw std::invalid_argument("classical bit index " + std::to_string(op.clbit) +
                                            " out of range");
            clbits[op.clbit] = static_cast<std::uint8_t>(measure_qubit(state, op.qubits[0], rng));
            break;
        }
        case OpKind::Reset: {
            if (measure_qubit(state, op.qubits[0], rng) == 1) apply_x(state, op.qubits[0]);
            break;
        }
        case OpKind::ClassicalIf: {
            if (op.condition_bit < 0 || op.condition_bit >= static_cast<int>(clbits.size()))
                throw std::invalid_argument("condition bit index " +
                                            std::to_string(op.condition_bit) + " out of range");
            if (clbits[op.condition_bit]) apply_op(state, *op.body, clbits, rng);
            break;
        }
    }
}

ShotRecord run_shot_with_clbits(const CircuitProgram& program, RngStream& rng,
                                std::vector<std::uint8_t> clbits) {
    if (clbits.size() != static_cast<std::size_t>(program.num_clbits))
        throw std::invalid_argument("preset classical register has the wrong width");
    Statevector state(program.num_qubits);
    for (const CircuitOp& op : program.ops) apply_op(state, op, clbits, rng);
    return ShotRecord{std::move(clbits)};
}

ShotRecord run_shot(const CircuitProgram& program, RngStream& rng) {
    return run_shot_with_clbits(program, rng,
                                std::vector<std::uint8_t>(program.num_clbits, 0));
}

void for_each_shot(const CircuitProgram& program, std::int64_t num_shots, std::uint64_t seed,
                   const std::function<void(std::int64_t, const ShotRecord&)>& fn) {
    if (num_shots < 1) throw std::invalid_argument("num_shots must be at least 1");
    program.validate();
    for (std::int64_t shot = 0; shot < num_shots; ++shot) {
        RngStream rng(seed, static_cast<std::uint64_t>(shot));
        ShotRecord record = run_shot(program, rng);
        fn(shot, record);
    }
}

std::vector<ShotRecord> run_shots(const CircuitProgram& program, std::int64_t num_shots,
                                  std::uint64_t seed) {
    std::vector<ShotRecord> records;
    records.reserve(static_cast<std::size_t>(num_shots));
    for_each_shot(program, num_shots, seed,
                  [&](std::int64_t, const ShotRecord& record) { records.push_back(record); });
    return records;
}

}  // namespace onecircuit
