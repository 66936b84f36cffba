#pragma once

#include <optional>

#include "lsc/circuit.hpp"
#include "lsc/layout.hpp"
#include "lsc/lli.hpp"
#include "lsc/scheduler.hpp"
#include "lsc/stats.hpp"

namespace lsc {

struct CompileOptions {
  SchedulerOptions scheduler;
  EdpcOptions edpc;
  std::optional<Layout> layout;  // overrides the generated EDPC layout
};

struct CompileResult {
  LliDag dag;
  SlicedProgram program;
  ProgramStats stats;
};

/// The explicit layout if one was given, else an EDPC layout sized for the circuit.
Layout layout_for(std::uint32_t num_qubits, const CompileOptions& options);

/// Lowers, schedules and measures a circuit.
CompileResult compile_circuit(const LogicalCircuit& circuit, const CompileOptions& options = {});

}  // namespace lsc
