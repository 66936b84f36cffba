#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsc {

/// Base class for every error raised by the compiler and the estimator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (QASM programs, layout files). Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Inconsistent configuration: too few data tiles, bad option values, missing table entries.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The wave scheduler stopped making progress. Carries the DAG node indices still waiting.
class DeadlockError : public Error {
 public:
  DeadlockError(const std::string& message, std::vector<std::size_t> stuck)
      : Error(message), stuck_(std::move(stuck)) {}

  const std::vector<std::size_t>& stuck_nodes() const noexcept { return stuck_; }

 private:
  std::vector<std::size_t> stuck_;
};

}  // namespace lsc
