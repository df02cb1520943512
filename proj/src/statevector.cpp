#include "onecircuit/statevector.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace onecircuit {

int max_qubits() {
    static const int cap = [] {
        if (const char* env = std::getenv("ONECIRCUIT_MAX_QUBITS")) {
            int value = std::atoi(env);
            if (value >= 1 && value <= 30) return value;
        }
        return 16;
    }();
    return cap;
}

Statevector::Statevector(int qubit_count) : num_qubits(qubit_count) {
    if (qubit_count < 0) throw std::invalid_argument("negative qubit count");
    if (qubit_count > max_qubits())
        throw std::invalid_argument("qubit count " + std::to_string(qubit_count) +
                                    " exceeds the cap of " + std::to_string(max_qubits()) +
                                    " (set ONECIRCUIT_MAX_QUBITS to raise it)");
    amps.assign(std::size_t{1} << qubit_count, Complex{0.0, 0.0});
    amps[0] = Complex{1.0, 0.0};
}

Statevector Statevector::from_amplitudes(int qubit_count, std::vector<Complex> amplitudes) {
    Statevector state(qubit_count);
    if (amplitudes.size() != state.dimension())
        throw std::invalid_argument("amplitude count does not match 2^num_qubits");
    state.amps = std::move(amplitudes);
    if (std::abs(state.norm_squared() - 1.0) > 1e-10)
        throw std::invalid_argument("amplitudes are not normalized");
    return state;
}

double Statevector::norm_squared() const {
    double total = 0.0;
    for (const Complex& a : amps) total += std::norm(a);
    return total;
}

double Statevector::probability_of_one(int qubit) const {
    const std::size_t mask = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if (i & mask) p += std::norm(amps[i]);
    return p;
}

std::vector<double> Statevector::marginal_probabilities(const std::vector<int>& qubits) const {
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        std::size_t outcome = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k)
            outcome |= ((i >> qubits[k]) & 1u) << k;
        probs[outcome] += p;
    }
    return probs;
}

void Statevector::set_to_zero_state() {
    std::fill(amps.begin(), amps.end(), Complex{0.0, 0.0});
    amps[0] = Complex{1.0, 0.0};
}

}  // namespace onecircuit
