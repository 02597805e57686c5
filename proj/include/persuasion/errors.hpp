#pragma once

#include <stdexcept>
#include <string>

namespace persuasion {

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  DomainError,          // query outside hull / belief off simplex
  NotRepresentable,     // prior not representable on the weight grid
  CapExceeded,          // lattice / clique / verifier caps
  NumericalStall,       // simplex iteration limit
  UnsupportedMode,      // e.g. cosine terms in exact arithmetic
  OrderViolation,       // relation failed the partial-order audit
  InputError,           // file / schema problems
};

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw SolverError(code, what);
}

}  // namespace persuasion
