#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "lsc/circuit.hpp"

namespace lsc {

struct RandSpec {
  std::uint32_t num_qubits = 2;
  std::size_t target_depth = 10;
  double t_fraction = 0.0;  // probability that a drawn gate is T rather than CNOT
  std::uint64_t seed = 1;
};

/// Uniform integer in [0, n). Rejection sampling, so results match across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);
/// Uniform double in [0, 1) from the top 53 bits.
double uniform_unit(std::mt19937_64& rng);

/// SplitMix64 finaliser, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Random CNOT/T circuit. Gates are drawn until the ASAP depth reaches the
/// target; the gate that reaches it is kept.
LogicalCircuit random_circuit(const RandSpec& spec);

}  // namespace lsc
