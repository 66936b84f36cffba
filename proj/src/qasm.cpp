#include "lsc/qasm.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "lsc/error.hpp"

namespace lsc {
namespace {

enum class Tok { Ident, Int, Real, String, Symbol, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.line = line_;
    tok.column = col_;
    if (pos_ >= src_.size()) return tok;

    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.type = Tok::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        tok.text += advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.type = Tok::Int;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        tok.text += advance();
      }
      if (pos_ < src_.size() && src_[pos_] == '.') {
        tok.type = Tok::Real;
        tok.text += advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          tok.text += advance();
        }
      }
    } else if (c == '"') {
      tok.type = Tok::String;
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') tok.text += advance();
      if (pos_ >= src_.size() || src_[pos_] != '"') {
        throw ParseError("unterminated string literal", tok.line, tok.column);
      }
      advance();
    } else {
      tok.type = Tok::Symbol;
      tok.text += advance();
      if (tok.text == "-" && pos_ < src_.size() && src_[pos_] == '>') tok.text += advance();
    }
    return tok;
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::unordered_map<std::string, GateKind>& gate_table() {
  static const std::unordered_map<std::string, GateKind> table = {
      {"x", GateKind::X},     {"y", GateKind::Y},   {"z", GateKind::Z},
      {"s", GateKind::S},     {"sdg", GateKind::Sdg}, {"t", GateKind::T},
      {"tdg", GateKind::Tdg}, {"h", GateKind::H},   {"cx", GateKind::CNOT},
      {"reset", GateKind::Reset}};
  return table;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { bump(); }

  LogicalCircuit run() {
    while (cur_.type != Tok::End) statement();
    if (!reg_name_) throw ParseError("program declares no qreg", cur_.line, cur_.column);
    return std::move(circuit_);
  }

 private:
  void bump() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }

  void expect_symbol(const char* sym) {
    if (cur_.type != Tok::Symbol || cur_.text != sym) {
      fail(std::string("expected '") + sym + "' but found '" + describe(cur_) + "'", cur_);
    }
    bump();
  }

  static std::string describe(const Token& t) {
    return t.type == Tok::End ? std::string("end of input") : t.text;
  }

  void skip_to_semicolon() {
    while (cur_.type != Tok::End && !(cur_.type == Tok::Symbol && cur_.text == ";")) bump();
    expect_symbol(";");
  }

  void statement() {
    if (cur_.type != Tok::Ident) fail("unexpected '" + describe(cur_) + "'", cur_);
    const Token head = cur_;
    const std::string& word = head.text;

    if (word == "OPENQASM") {
      bump();
      if (cur_.type != Tok::Real && cur_.type != Tok::Int) fail("expected version number", cur_);
      if (cur_.text.rfind("2", 0) != 0) fail("only OpenQASM 2.x is supported", cur_);
      bump();
      expect_symbol(";");
      return;
    }
    if (word == "include") {
      bump();
      if (cur_.type != Tok::String) fail("expected file name string after include", cur_);
      bump();
      expect_symbol(";");
      return;
    }
    if (word == "qreg") {
      bump();
      qreg(head);
      return;
    }
    if (word == "creg" || word == "measure") {
      fail("classical registers and measurements are not supported ('" + word + "')", head);
    }
    if (word == "gate" || word == "opaque" || word == "if") {
      fail("'" + word + "' is not supported in the Clifford+T subset", head);
    }
    if (word == "barrier") {
      bump();
      skip_to_semicolon();
      return;
    }

    auto it = gate_table().find(word);
    if (it == gate_table().end()) fail("unsupported gate '" + word + "'", head);
    bump();
    gate(it->second, head);
  }

  void qreg(const Token& head) {
    if (reg_name_) fail("multiple qreg declarations are not supported", head);
    if (cur_.type != Tok::Ident) fail("expected register name", cur_);
    std::string name = cur_.text;
    bump();
    expect_symbol("[");
    if (cur_.type != Tok::Int) fail("expected register size", cur_);
    const Token size_tok = cur_;
    const unsigned long size = std::stoul(size_tok.text);
    if (size == 0 || size > 0xffffffffUL) fail("register size out of range", size_tok);
    bump();
    expect_symbol("]");
    expect_symbol(";");
    reg_name_ = std::move(name);
    circuit_.num_qubits = static_cast<std::uint32_t>(size);
  }

  struct Operand {
    std::optional<std::uint32_t> index;  // nullopt: whole register
    Token at;
  };

  Operand operand() {
    Operand op{std::nullopt, cur_};
    if (cur_.type != Tok::Ident) fail("expected qubit operand", cur_);
    if (!reg_name_) fail("gate applied before any qreg declaration", cur_);
    if (cur_.text != *reg_name_) fail("unknown register '" + cur_.text + "'", cur_);
    bump();
    if (cur_.type == Tok::Symbol && cur_.text == "[") {
      bump();
      if (cur_.type != Tok::Int) fail("expected qubit index", cur_);
      const Token idx = cur_;
      const unsigned long value = std::stoul(idx.text);
      if (value >= circuit_.num_qubits) {
        fail("qubit index " + idx.text + " out of range for register of size " +
                 std::to_string(circuit_.num_qubits),
             idx);
      }
      op.index = static_cast<std::uint32_t>(value);
      bump();
      expect_symbol("]");
    }
    return op;
  }

  void gate(GateKind kind, const Token& head) {
    if (cur_.type == Tok::Symbol && cur_.text == "(") {
      fail("gate '" + head.text + "' takes no parameters", cur_);
    }
    if (gate_arity(kind) == 1) {
      const Operand q = operand();
      expect_symbol(";");
      if (q.index) {
        circuit_.gates.push_back(Gate::single(kind, *q.index));
      } else {
        for (std::uint32_t i = 0; i < circuit_.num_qubits; ++i) {
          circuit_.gates.push_back(Gate::single(kind, i));
        }
      }
      return;
    }
    const Operand c = operand();
    expect_symbol(",");
    const Operand t = operand();
    expect_symbol(";");
    if (!c.index || !t.index) fail("register broadcast is not supported for cx", head);
    if (*c.index == *t.index) fail("cx control and target are the same qubit", t.at);
    circuit_.gates.push_back(Gate::cnot(*c.index, *t.index));
  }

  Lexer lex_;
  Token cur_;
  std::optional<std::string> reg_name_;
  LogicalCircuit circuit_;
};

}  // namespace

LogicalCircuit parse_program(std::string_view text) { return Parser(text).run(); }

LogicalCircuit read_program_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open QASM file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

std::string emit_program(const LogicalCircuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << circuit.num_qubits << "];\n";
  for (const Gate& g : circuit.gates) {
    out << gate_mnemonic(g.kind) << " q[" << g.operands[0] << "]";
    if (g.arity() == 2) out << ",q[" << g.operands[1] << "]";
    out << ";\n";
  }
  return out.str();
}

}  // namespace lsc
