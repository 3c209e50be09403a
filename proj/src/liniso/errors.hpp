#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liniso {

// Precondition broken by the caller (arity mismatch, bad parameter range).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive operation was asked to run above its configured size guard.
class GuardRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class LpFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The spectral sampler exhausted its retries without certifying a result.
class SamplerFailure : public std::runtime_error {
 public:
  SamplerFailure(const std::string& what, double best_distance)
      : std::runtime_error(what), best_distance_(best_distance) {}
  double best_distance() const { return best_distance_; }

 private:
  double best_distance_;
};

// Malformed message stream or a peer that hung up mid-protocol.
class ProtocolFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proven invariant did not hold; indicates a bug, never bad input.
class InvariantFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace liniso
