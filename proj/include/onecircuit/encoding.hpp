#pragma once

#include <span>
#include <vector>

#include "onecircuit/statevector.hpp"

namespace onecircuit {

/// Result of amplitude-encoding a classical vector: the input zero-padded to
/// the next power of two, its normalization constant, and the encoded state
/// whose basis-state i amplitude is c_norm * x[i].
struct EncodedInput {
    std::vector<double> padded;  // length 2^num_qubits
    int num_qubits = 0;
    double c_norm = 0.0;
    Statevector state;
};

EncodedInput amplitude_encode(std::span<const double> x);

}  // namespace onecircuit
