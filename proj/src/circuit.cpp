#include "lsc/circuit.hpp"

#include <algorithm>
#include <string>

#include "lsc/error.hpp"

namespace lsc {

std::string_view gate_mnemonic(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::H: return "h";
    case GateKind::CNOT: return "cx";
    case GateKind::Reset: return "reset";
  }
  return "?";
}

std::size_t LogicalCircuit::t_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return is_t_like(g.kind); }));
}

void LogicalCircuit::validate() const {
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    for (std::size_t k = 0; k < g.arity(); ++k) {
      if (g.operands[k] >= num_qubits) {
        throw ConfigError("gate " + std::to_string(i) + " (" + std::string(gate_mnemonic(g.kind)) +
                          ") addresses qubit " + std::to_string(g.operands[k]) +
                          " outside a register of " + std::to_string(num_qubits));
      }
    }
    if (g.kind == GateKind::CNOT && g.operands[0] == g.operands[1]) {
      throw ConfigError("gate " + std::to_string(i) + ": cx control equals target");
    }
  }
}

std::size_t circuit_depth(const LogicalCircuit& circuit) {
  std::vector<std::size_t> level(circuit.num_qubits, 0);
  std::size_t depth = 0;
  for (const Gate& g : circuit.gates) {
    std::size_t next = level[g.operands[0]];
    if (g.arity() == 2) next = std::max(next, level[g.operands[1]]);
    ++next;
    for (std::size_t k = 0; k < g.arity(); ++k) level[g.operands[k]] = next;
    depth = std::max(depth, next);
  }
  return depth;
}

}  // namespace lsc
