#pragma once

#include <stdexcept>
#include <string>

namespace hcat {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different ambient fields (e.g. F_3 vs F_5).
class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("field mismatch") {}
  explicit FieldMismatch(const std::string& what) : Error("field mismatch: " + what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

/// Modules, complexes or maps over incompatible algebras.
class AlgebraMismatch : public Error {
 public:
  explicit AlgebraMismatch(const std::string& what) : Error("algebra mismatch: " + what) {}
};

/// A constructed value failed one of its structural invariants
/// (associativity, representation identities, d^2 = 0, intertwining, ...).
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(what) {}
};

/// Malformed textual input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// The requested computation cannot be certified within the truncation window.
class WindowShortfall : public Error {
 public:
  explicit WindowShortfall(const std::string& what) : Error(what) {}
};

}  // namespace hcat
