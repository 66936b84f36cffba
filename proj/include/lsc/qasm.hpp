#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lsc/circuit.hpp"

namespace lsc {

// Reads the Clifford+T subset of OpenQASM 2.0: one `qreg`, the gates
// x y z s sdg t tdg h cx reset, and `barrier` (ignored). Headers
// (`OPENQASM 2.0;`, `include "...";`) are accepted and ignored.
// Classical registers, measurements, gate definitions and conditionals
// are rejected with a ParseError pointing at the offending token.
LogicalCircuit parse_program(std::string_view text);

LogicalCircuit read_program_file(const std::filesystem::path& path);

/// Canonical QASM text for a circuit; parse_program(emit_program(c)) == c.
std::string emit_program(const LogicalCircuit& circuit);

}  // namespace lsc
