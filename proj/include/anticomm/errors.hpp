#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anticomm {

/// Malformed Hamiltonian or integral input. Carries the 1-based line number
/// when the failure is tied to a line (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An enumeration or symbolic expansion would exceed its configured work
/// budget. Callers fall back to a composite bound.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense operation was requested above the configured qubit cap.
class DenseCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace anticomm
