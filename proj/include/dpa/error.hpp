#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpa {

enum class ErrorCode {
  OutOfRange,
  AssumptionViolated,
  InconsistentKind,
  MissingField,
  WrongKind,
  NumericallyUnstable,
  NoConvergence,
  InsufficientSupport,
  MethodUnsupported,
  InvalidArgument,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::InconsistentKind: return "InconsistentKind";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::NumericallyUnstable: return "NumericallyUnstable";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InsufficientSupport: return "InsufficientSupport";
    case ErrorCode::MethodUnsupported: return "MethodUnsupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Exception type thrown by every fallible operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpa
