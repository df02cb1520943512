#include "onecircuit/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

namespace onecircuit {

Matrix2 ry_matrix(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
}

Matrix2 matmul(const Matrix2& a, const Matrix2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Matrix2 adjoint(const Matrix2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

bool is_identity(const Matrix2& m, double tol) {
    return std::abs(m[0] - Complex{1, 0}) <= tol && std::abs(m[1]) <= tol &&
           std::abs(m[2]) <= tol && std::abs(m[3] - Complex{1, 0}) <= tol;
}

bool is_unitary(const Matrix2& m, double tol) {
    return is_identity(matmul(adjoint(m), m), tol);
}

CircuitOp CircuitOp::state_prep(std::vector<int> qubits, std::vector<Complex> amplitudes) {
    if (amplitudes.size() != (std::size_t{1} << qubits.size()))
        throw std::invalid_argument("state_prep amplitude count must be 2^(target count)");
    double norm = 0.0;
    for (const Complex& a : amplitudes) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::invalid_argument("state_prep amplitudes are not normalized");
    CircuitOp op{OpKind::StatePrep, std::move(qubits)};
    op.prep_amplitudes = std::move(amplitudes);
    return op;
}

CircuitOp CircuitOp::ry(int qubit, double angle) {
    CircuitOp op{OpKind::RY, {qubit}};
    op.angle = angle;
    return op;
}

CircuitOp CircuitOp::cry(int control, int target, double angle) {
    CircuitOp op{OpKind::CRY, {control, target}};
    op.angle = angle;
    return op;
}

CircuitOp CircuitOp::cx(int control, int target) { return {OpKind::CX, {control, target}}; }

CircuitOp CircuitOp::x(int qubit) { return {OpKind::X, {qubit}}; }

CircuitOp CircuitOp::unitary(int qubit, const Matrix2& u) {
    if (!is_unitary(u)) throw std::invalid_argument("matrix is not unitary");
    CircuitOp op{OpKind::Unitary1q, {qubit}};
    op.matrix = u;
    return op;
}

CircuitOp CircuitOp::controlled_unitary(int control, int target, const Matrix2& u) {
    if (!is_unitary(u)) throw std::invalid_argument("matrix is not unitary");
    CircuitOp op{OpKind::ControlledUnitary1q, {control, target}};
    op.matrix = u;
    return op;
}

CircuitOp CircuitOp::measure(int qubit, int clbit) {
    CircuitOp op{OpKind::Measure, {qubit}};
    op.clbit = clbit;
    return op;
}

CircuitOp CircuitOp::reset(int qubit) { return {OpKind::Reset, {qubit}}; }

CircuitOp CircuitOp::classical_if(int condition_bit, CircuitOp wrapped) {
    switch (wrapped.kind) {
        case OpKind::Measure:
        case OpKind::Reset:
        case OpKind::ClassicalIf:
        case OpKind::StatePrep:
            throw std::invalid_argument("classical_if can only wrap a gate");
        default:
            break;
    }
    CircuitOp op{OpKind::ClassicalIf, wrapped.qubits};
    op.condition_bit = condition_bit;
    op.body = std::make_shared<const CircuitOp>(std::move(wrapped));
    return op;
}

const std::vector<int>& CircuitOp::touched_qubits() const { return qubits; }

namespace {

void check_op(const CircuitOp& op, int num_qubits, int num_clbits) {
    std::unordered_set<int> seen;
    for (int q : op.qubits) {
        if (q < 0 || q >= num_qubits)
            throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
        if (!seen.insert(q).second)
            throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
    }
    switch (op.kind) {
        case OpKind::Measure:
            if (op.clbit < 0 || op.clbit >= num_clbits)
                throw std::invalid_argument("classical bit index " + std::to_string(op.clbit) +
                                            " out of range");
            break;
        case OpKind::ClassicalIf:
            if (op.condition_bit < 0 || op.condition_bit >= num_clbits)
                throw std::invalid_argument("condition bit index " +
                                            std::to_string(op.condition_bit) + " out of range");
            if (!op.body) throw std::invalid_argument("classical_if without a wrapped op");
            check_op(*op.body, num_qubits, num_clbits);
            break;
        case OpKind::CRY:
        case OpKind::CX:
        case OpKind::ControlledUnitary1q:
            if (op.qubits.size() != 2)
                throw std::invalid_argument("two-qubit op needs exactly two qubits");
            break;
        default:
            break;
    }
}

}  // namespace

void CircuitProgram::append(CircuitOp op) {
    check_op(op, num_qubits, num_clbits);
    ops.push_back(std::move(op));
}

void CircuitProgram::validate() const {
    if (num_qubits < 0 || num_clbits < 0)
        throw std::invalid_argument("negative register width");
    for (const CircuitOp& op : ops) check_op(op, num_qubits, num_clbits);
}

}  // namespace onecircuit
