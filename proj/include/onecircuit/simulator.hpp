#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "onecircuit/circuit.hpp"
#include "onecircuit/rng.hpp"
#include "onecircuit/statevector.hpp"

namespace onecircuit {

/// Classical bits produced by one execution, indexed identically to the
/// MEASURE targets of the program.
struct ShotRecord {
    std::vector<std::uint8_t> bits;
};

/// Applies one op in place. Measurements draw from rng and write into
/// clbits; every other op leaves clbits untouched.
void apply_op(Statevector& state, const CircuitOp& op, std::vector<std::uint8_t>& clbits,
              RngStream& rng);

/// Executes the whole program from |0...0> with all-zero classical bits.
ShotRecord run_shot(const CircuitProgram& program, RngStream& rng);

/// Like run_shot but starting from preset classical bits (used by the
/// classically controlled estimator, which draws bits before the shot).
ShotRecord run_shot_with_clbits(const CircuitProgram& program, RngStream& rng,
                                std::vector<std::uint8_t> clbits);

/// Runs num_shots executions; shot i draws from the stream keyed by
/// (seed, i), so the result is a pure function of (program, num_shots, seed).
std::vector<ShotRecord> run_shots(const CircuitProgram& program, std::int64_t num_shots,
                                  std::uint64_t seed);

/// Streaming variant of run_shots for runs too large to materialize.
void for_each_shot(const CircuitProgram& program, std::int64_t num_shots, std::uint64_t seed,
                   const std::function<void(std::int64_t, const ShotRecord&)>& fn);

}  // namespace onecircuit
