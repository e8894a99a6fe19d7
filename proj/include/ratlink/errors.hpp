#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratlink {

enum class ErrorKind {
  DegenerateDisplacement,
  ZeroDirection,
  ZeroElement,
  StudyViolation,
  OnBorderOfDomain,
  NoConvergence,
  InvalidPose,
  PoleOnPath,
  QuadratureFailure,
  BisectionFailure,
  ParseError,
  SchemaError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateDisplacement: return "DegenerateDisplacement";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::StudyViolation: return "StudyViolation";
    case ErrorKind::OnBorderOfDomain: return "OnBorderOfDomain";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidPose: return "InvalidPose";
    case ErrorKind::PoleOnPath: return "PoleOnPath";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::BisectionFailure: return "BisectionFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Base of every error raised by the library. `kind()` is stable and is what
/// the CLI prints and maps to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ratlink
