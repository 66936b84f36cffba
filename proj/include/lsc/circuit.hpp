#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace lsc {

enum class GateKind { X, Y, Z, S, Sdg, T, Tdg, H, CNOT, Reset };

/// Lower-case QASM mnemonic ("x", "sdg", "cx", ...).
std::string_view gate_mnemonic(GateKind kind);

constexpr std::size_t gate_arity(GateKind kind) { return kind == GateKind::CNOT ? 2 : 1; }

constexpr bool is_t_like(GateKind kind) { return kind == GateKind::T || kind == GateKind::Tdg; }

struct Gate {
  GateKind kind = GateKind::X;
  // operands[0] is the target of single-qubit gates and the control of CNOT.
  std::array<std::uint32_t, 2> operands{};

  std::size_t arity() const { return gate_arity(kind); }

  static Gate single(GateKind kind, std::uint32_t qubit) { return Gate{kind, {qubit, 0}}; }
  static Gate cnot(std::uint32_t control, std::uint32_t target) {
    return Gate{GateKind::CNOT, {control, target}};
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct LogicalCircuit {
  std::uint32_t num_qubits = 0;
  std::vector<Gate> gates;

  /// Number of T and T-dagger gates, i.e. the number of magic states the program consumes.
  std::size_t t_count() const;

  /// Throws ConfigError if an operand is out of range or a CNOT acts on one qubit twice.
  void validate() const;

  friend bool operator==(const LogicalCircuit&, const LogicalCircuit&) = default;
};

/// Gate-level as-soon-as-possible depth.
std::size_t circuit_depth(const LogicalCircuit& circuit);

}  // namespace lsc
