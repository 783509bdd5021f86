#pragma once

#include <stdexcept>
#include <string>

namespace fbl {

enum class ErrorCode {
  NotALattice,
  NotDistributive,
  NotBounded,
  CycleInOrder,
  DimensionMismatch,
  InvalidLayering,
  EmptyKL,
  LatticeMismatch,
  NotAHomomorphism,
  NotARetraction,
  NotMonotone,
  NTooLarge,
  OutOfSquare,
  OutOfBounds,
  NotInU,
  NotBooleanAlgebra,
  ParseError,
  ValidationError,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a stable error code plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fbl
