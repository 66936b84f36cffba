#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lsc/circuit.hpp"

namespace lsc {

/// Identifier of a surface-code patch. IDs below the circuit's qubit count are
/// data patches; the rest are resource patches minted during lowering.
struct PatchId {
  std::uint32_t value = 0;
  friend auto operator<=>(const PatchId&, const PatchId&) = default;
};

enum class LliKind {
  Reset,
  XGate,
  YGate,
  ZGate,
  HGate,
  RotateSingleCellPatch,
  BellBasedCNOT,
  MagicStateRequest,
  YStateRequest,
  SinglePatchMeasurement,
};

std::string_view lli_kind_name(LliKind kind);

constexpr bool is_resource_request(LliKind kind) {
  return kind == LliKind::MagicStateRequest || kind == LliKind::YStateRequest;
}

/// Logical time-slices an instruction occupies once scheduled.
constexpr int lli_duration(LliKind kind) {
  switch (kind) {
    case LliKind::RotateSingleCellPatch: return 3;
    case LliKind::BellBasedCNOT: return 2;
    default: return 0;
  }
}

struct Lli {
  LliKind kind = LliKind::XGate;
  std::array<PatchId, 2> operands{};
  std::uint8_t arity = 1;
  std::size_t origin = 0;  // index of the source gate

  static Lli unary(LliKind kind, PatchId p, std::size_t origin) {
    return Lli{kind, {p, PatchId{}}, 1, origin};
  }
  static Lli binary(LliKind kind, PatchId a, PatchId b, std::size_t origin) {
    return Lli{kind, {a, b}, 2, origin};
  }

  bool touches(PatchId p) const {
    return operands[0] == p || (arity == 2 && operands[1] == p);
  }

  friend bool operator==(const Lli&, const Lli&) = default;
};

/// "BellBasedCNOT 0,1" style text.
std::string format_lli(const Lli& lli);

class PatchIdAllocator {
 public:
  explicit PatchIdAllocator(std::uint32_t first_free) : next_(first_free) {}
  PatchId fresh() { return PatchId{next_++}; }
  std::uint32_t peek() const noexcept { return next_; }

 private:
  std::uint32_t next_;
};

struct LliDag {
  std::uint32_t num_qubits = 0;
  std::vector<Lli> nodes;
  // Immediate predecessors/successors per node, deduplicated, in index order.
  std::vector<std::vector<std::size_t>> preds;
  std::vector<std::vector<std::size_t>> succs;

  std::size_t size() const noexcept { return nodes.size(); }
  std::size_t edge_count() const;
};

std::vector<Lli> lower_gate(const Gate& gate, std::size_t origin, PatchIdAllocator& allocator);

/// Lowers gate by gate in program order. Edges link each LLI to the previous
/// LLI on each of its patches; transitive edges are left out.
LliDag lower_circuit(const LogicalCircuit& circuit);

/// Builds the shared-patch dependency DAG over an instruction list.
LliDag build_dag(std::uint32_t num_qubits, std::vector<Lli> nodes);

/// Flat instruction listing, one LLI per line (`--printlli unsliced`).
std::string emit_unsliced(const LliDag& dag);

}  // namespace lsc
