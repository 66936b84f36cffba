#include "lsc/randgen.hpp"

#include <algorithm>
#include <limits>

#include "lsc/error.hpp"

namespace lsc {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw ConfigError("uniform_below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

LogicalCircuit random_circuit(const RandSpec& spec) {
  if (spec.t_fraction < 0.0 || spec.t_fraction > 1.0) throw ConfigError("t_fraction must lie in [0, 1]");
  if (spec.num_qubits < 1 || (spec.t_fraction < 1.0 && spec.num_qubits < 2)) {
    throw ConfigError("random circuits with CNOTs need at least 2 qubits");
  }
  LogicalCircuit c;
  c.num_qubits = spec.num_qubits;
  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> level(spec.num_qubits, 0);
  std::size_t depth = 0;
  while (depth < spec.target_depth) {
    if (uniform_unit(rng) < spec.t_fraction) {
      const auto q = static_cast<std::uint32_t>(uniform_below(rng, spec.num_qubits));
      c.gates.push_back(Gate::single(GateKind::T, q));
      depth = std::max(depth, ++level[q]);
    } else {
      const auto a = static_cast<std::uint32_t>(uniform_below(rng, spec.num_qubits));
      auto b = static_cast<std::uint32_t>(uniform_below(rng, spec.num_qubits - 1));
      if (b >= a) ++b;
      c.gates.push_back(Gate::cnot(a, b));
      const std::size_t l = std::max(level[a], level[b]) + 1;
      level[a] = level[b] = l;
      depth = std::max(depth, l);
    }
  }
  return c;
}

}  // namespace lsc
