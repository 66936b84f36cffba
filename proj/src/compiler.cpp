#include "lsc/compiler.hpp"

namespace lsc {

Layout layout_for(std::uint32_t num_qubits, const CompileOptions& options) {
  if (options.layout) return *options.layout;
  return generate_edpc(num_qubits, options.edpc);
}

CompileResult compile_circuit(const LogicalCircuit& circuit, const CompileOptions& options) {
  CompileResult r;
  r.dag = lower_circuit(circuit);
  const Layout layout = layout_for(circuit.num_qubits, options);
  r.program = schedule(r.dag, layout, options.scheduler);
  r.stats = compute_stats(r.program);
  return r;
}

}  // namespace lsc
