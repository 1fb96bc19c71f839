#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dimerlab {

enum class ErrorKind {
  InvalidArgument,
  EndpointSingularity,
  DomainError,
  ConvergenceFailure,
  NotStationary,
  BranchMatchingAmbiguous,
  StepUnderflow,
  InvalidPotential,
  NoDoubletGap,
  GridCapExceeded,
  SymmetryViolation,
};

std::string_view to_string(ErrorKind kind);

/// Numerical or contract failure raised by the core library.  Carries the
/// failing module name so front ends can report "module: message".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(std::string(module) + ": " + std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EndpointSingularity: return "EndpointSingularity";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotStationary: return "NotStationary";
    case ErrorKind::BranchMatchingAmbiguous: return "BranchMatchingAmbiguous";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::InvalidPotential: return "InvalidPotential";
    case ErrorKind::NoDoubletGap: return "NoDoubletGap";
    case ErrorKind::GridCapExceeded: return "GridCapExceeded";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
  }
  return "Unknown";
}

}  // namespace dimerlab
