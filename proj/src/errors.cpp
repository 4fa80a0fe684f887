#include "zaktp/errors.hpp"

namespace zaktp {

const char* error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorKind::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::StripViolation: return "StripViolation";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::SlowDecay: return "SlowDecay";
    case ErrorKind::NoZero: return "NoZero";
    case ErrorKind::MultipleZeros: return "MultipleZeros";
    case ErrorKind::NotUnitMonotone: return "NotUnitMonotone";
    case ErrorKind::SigmaTooLarge: return "SigmaTooLarge";
    case ErrorKind::Indivisible: return "Indivisible";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace zaktp
