#ifndef MVDL_ERRORS_HPP
#define MVDL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvdl {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad syntax, broken clause invariants,
/// values from different universes.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class UniverseMismatch : public InvalidInput {
 public:
  UniverseMismatch() : InvalidInput("operands belong to different variable universes") {}
};

/// An operation would have to enumerate more interpretations than allowed.
class CapExceeded : public InvalidInput {
 public:
  CapExceeded(std::size_t n, std::size_t cap)
      : InvalidInput("universe of " + std::to_string(n) + " variables exceeds the enumeration cap of " +
                     std::to_string(cap)) {}
};

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An oracle answered outside its contract, or a translation step found its
/// precondition broken.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class OracleError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// A run exceeded one of the learner's polynomial resource bounds.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mvdl

#endif  // MVDL_ERRORS_HPP
