#include "lsc/lli.hpp"

#include <algorithm>
#include <unordered_map>

namespace lsc {

std::string_view lli_kind_name(LliKind kind) {
  switch (kind) {
    case LliKind::Reset: return "Reset";
    case LliKind::XGate: return "XGate";
    case LliKind::YGate: return "YGate";
    case LliKind::ZGate: return "ZGate";
    case LliKind::HGate: return "HGate";
    case LliKind::RotateSingleCellPatch: return "RotateSingleCellPatch";
    case LliKind::BellBasedCNOT: return "BellBasedCNOT";
    case LliKind::MagicStateRequest: return "MagicStateRequest";
    case LliKind::YStateRequest: return "YStateRequest";
    case LliKind::SinglePatchMeasurement: return "SinglePatchMeasurement";
  }
  return "?";
}

std::string format_lli(const Lli& lli) {
  std::string out(lli_kind_name(lli.kind));
  out += ' ';
  out += std::to_string(lli.operands[0].value);
  if (lli.arity == 2) {
    out += ',';
    out += std::to_string(lli.operands[1].value);
  }
  return out;
}

std::size_t LliDag::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succs) n += s.size();
  return n;
}

namespace {

// Catalytic S: the Y state is consumed by one CNOT and restored by the second.
void append_catalytic_s(std::vector<Lli>& out, PatchId q, std::size_t origin,
                        PatchIdAllocator& allocator) {
  const PatchId y = allocator.fresh();
  out.push_back(Lli::unary(LliKind::YStateRequest, y, origin));
  out.push_back(Lli::binary(LliKind::BellBasedCNOT, q, y, origin));
  out.push_back(Lli::unary(LliKind::HGate, q, origin));
  out.push_back(Lli::unary(LliKind::RotateSingleCellPatch, q, origin));
  out.push_back(Lli::binary(LliKind::BellBasedCNOT, q, y, origin));
  out.push_back(Lli::unary(LliKind::HGate, q, origin));
  out.push_back(Lli::unary(LliKind::RotateSingleCellPatch, q, origin));
}

}  // namespace

std::vector<Lli> lower_gate(const Gate& gate, std::size_t origin, PatchIdAllocator& allocator) {
  const PatchId q{gate.operands[0]};
  std::vector<Lli> out;
  switch (gate.kind) {
    case GateKind::Reset: out.push_back(Lli::unary(LliKind::Reset, q, origin)); break;
    case GateKind::X: out.push_back(Lli::unary(LliKind::XGate, q, origin)); break;
    case GateKind::Y: out.push_back(Lli::unary(LliKind::YGate, q, origin)); break;
    case GateKind::Z: out.push_back(Lli::unary(LliKind::ZGate, q, origin)); break;
    case GateKind::H:
      out.push_back(Lli::unary(LliKind::HGate, q, origin));
      out.push_back(Lli::unary(LliKind::RotateSingleCellPatch, q, origin));
      break;
    case GateKind::CNOT:
      out.push_back(Lli::binary(LliKind::BellBasedCNOT, q, PatchId{gate.operands[1]}, origin));
      break;
    case GateKind::S:
    case GateKind::Sdg:
      append_catalytic_s(out, q, origin, allocator);
      break;
    case GateKind::T:
    case GateKind::Tdg: {
      const PatchId m = allocator.fresh();
      out.push_back(Lli::unary(LliKind::MagicStateRequest, m, origin));
      out.push_back(Lli::binary(LliKind::BellBasedCNOT, q, m, origin));
      out.push_back(Lli::unary(LliKind::SinglePatchMeasurement, m, origin));
      // The corrective S is needed half the time; its volume is always allocated.
      append_catalytic_s(out, q, origin, allocator);
      break;
    }
  }
  return out;
}

LliDag build_dag(std::uint32_t num_qubits, std::vector<Lli> nodes) {
  LliDag dag;
  dag.num_qubits = num_qubits;
  dag.nodes = std::move(nodes);
  dag.preds.resize(dag.nodes.size());
  dag.succs.resize(dag.nodes.size());

  std::unordered_map<std::uint32_t, std::size_t> last_on_patch;
  for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
    const Lli& lli = dag.nodes[i];
    for (std::size_t k = 0; k < lli.arity; ++k) {
      auto [it, inserted] = last_on_patch.try_emplace(lli.operands[k].value, i);
      if (!inserted) {
        const std::size_t pred = it->second;
        auto& p = dag.preds[i];
        if (std::find(p.begin(), p.end(), pred) == p.end()) {
          p.push_back(pred);
          dag.succs[pred].push_back(i);
        }
        it->second = i;
      }
    }
    std::sort(dag.preds[i].begin(), dag.preds[i].end());
  }
  return dag;
}

LliDag lower_circuit(const LogicalCircuit& circuit) {
  circuit.validate();
  PatchIdAllocator allocator(circuit.num_qubits);
  std::vector<Lli> nodes;
  nodes.reserve(circuit.gates.size() * 2);
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    auto lowered = lower_gate(circuit.gates[i], i, allocator);
    nodes.insert(nodes.end(), lowered.begin(), lowered.end());
  }
  return build_dag(circuit.num_qubits, std::move(nodes));
}

std::string emit_unsliced(const LliDag& dag) {
  std::string out;
  for (const Lli& lli : dag.nodes) {
    out += format_lli(lli);
    out += '\n';
  }
  return out;
}

}  // namespace lsc
