#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace onecircuit {

using Complex = std::complex<double>;

/// Hard ceiling on dense simulation size. Defaults to 16 qubits and can be
/// raised or lowered with the ONECIRCUIT_MAX_QUBITS environment variable.
int max_qubits();

/// Dense statevector over num_qubits qubits. Qubit 0 is the least
/// significant bit of a basis-state index.
struct Statevector {
    int num_qubits = 0;
    std::vector<Complex> amps;

    Statevector() = default;

    /// |0...0> on the given number of qubits.
    explicit Statevector(int qubit_count);

    static Statevector from_amplitudes(int qubit_count, std::vector<Complex> amplitudes);

    std::size_t dimension() const { return amps.size(); }

    double norm_squared() const;

    /// Probability of measuring |1> on the given qubit.
    double probability_of_one(int qubit) const;

    /// Born distribution over the listed qubits (qubits[0] is the LSB of the
    /// returned outcome index), marginalized over everything else.
    std::vector<double> marginal_probabilities(const std::vector<int>& qubits) const;

    void set_to_zero_state();
};

}  // namespace onecircuit
