#include "onecircuit/encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace onecircuit {

EncodedInput amplitude_encode(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("cannot encode an empty vector");
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("input contains a non-finite value");

    std::size_t dim = 2;
    int qubits = 1;
    while (dim < x.size()) {
        dim <<= 1;
        ++qubits;
    }

    EncodedInput encoded;
    encoded.num_qubits = qubits;
    encoded.padded.assign(dim, 0.0);
    std::copy(x.begin(), x.end(), encoded.padded.begin());

    double norm_sq = 0.0;
    for (double v : encoded.padded) norm_sq += v * v;
    if (norm_sq <= 0.0) throw std::invalid_argument("cannot amplitude-encode the zero vector");
    encoded.c_norm = 1.0 / std::sqrt(norm_sq);

    std::vector<Complex> amps(dim);
    for (std::size_t i = 0; i < dim; ++i)
        amps[i] = Complex{encoded.c_norm * encoded.padded[i], 0.0};
    encoded.state = Statevector::from_amplitudes(qubits, std::move(amps));
    return encoded;
}

}  // namespace onecircuit
