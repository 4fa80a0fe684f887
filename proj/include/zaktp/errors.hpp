#pragma once

#include <stdexcept>
#include <string>

namespace zaktp {

/// Error categories surfaced by the library. The names are part of the CLI
/// contract and are printed verbatim.
enum class ErrorKind {
  EmptyInput,
  ZeroWeight,
  NonFiniteWeight,
  DerivativeUnavailable,
  IllConditioned,
  StripViolation,
  ToleranceUnreachable,
  PoleHit,
  SlowDecay,
  NoZero,
  MultipleZeros,
  NotUnitMonotone,
  SigmaTooLarge,
  Indivisible,
  InvalidArgument,
  IoError,
};

const char* error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zaktp
