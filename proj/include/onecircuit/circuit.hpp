#pragma once

#include <array>
#include <memory>
#include <vector>

#include "onecircuit/statevector.hpp"

namespace onecircuit {

/// Row-major 2x2 complex matrix: {u00, u01, u10, u11}.
using Matrix2 = std::array<Complex, 4>;

Matrix2 ry_matrix(double angle);
Matrix2 matmul(const Matrix2& a, const Matrix2& b);
Matrix2 adjoint(const Matrix2& m);
bool is_unitary(const Matrix2& m, double tol = 1e-10);
bool is_identity(const Matrix2& m, double tol = 1e-10);

enum class OpKind {
    StatePrep,            // initialize target qubits (must be in |0>) to given amplitudes
    RY,                   // rotation about the y-axis: [[cos a/2, -sin a/2], [sin a/2, cos a/2]]
    CRY,                  // RY on target iff control qubit is |1>
    CX,                   // X on target iff control qubit is |1>
    X,                    // bit flip
    Unitary1q,            // arbitrary single-qubit unitary
    ControlledUnitary1q,  // arbitrary single-qubit unitary iff control is |1>
    Measure,              // computational-basis measurement recorded into a classical bit
    Reset,                // measure, then flip to |0> if the outcome was |1>
    ClassicalIf,          // apply the wrapped op iff a classical bit equals 1
};

struct CircuitOp {
    OpKind kind;
    std::vector<int> qubits;  // control first for two-qubit ops
    double angle = 0.0;
    Matrix2 matrix{};
    std::vector<Complex> prep_amplitudes;
    int clbit = -1;          // Measure target
    int condition_bit = -1;  // ClassicalIf condition
    std::shared_ptr<const CircuitOp> body;

    static CircuitOp state_prep(std::vector<int> qubits, std::vector<Complex> amplitudes);
    static CircuitOp ry(int qubit, double angle);
    static CircuitOp cry(int control, int target, double angle);
    static CircuitOp cx(int control, int target);
    static CircuitOp x(int qubit);
    static CircuitOp unitary(int qubit, const Matrix2& u);
    static CircuitOp controlled_unitary(int control, int target, const Matrix2& u);
    static CircuitOp measure(int qubit, int clbit);
    static CircuitOp reset(int qubit);
    static CircuitOp classical_if(int condition_bit, CircuitOp wrapped);

    /// Qubit indices the op acts on, including those of a wrapped op.
    const std::vector<int>& touched_qubits() const;
};

struct CircuitProgram {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<CircuitOp> ops;

    CircuitProgram() = default;
    CircuitProgram(int qubits, int clbits) : num_qubits(qubits), num_clbits(clbits) {}

    /// Validates indices against this program and appends.
    void append(CircuitOp op);

    std::size_t size() const { return ops.size(); }

    /// Re-checks every op; throws std::invalid_argument on the first violation.
    void validate() const;
};

}  // namespace onecircuit
