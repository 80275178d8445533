#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jacobi {

/// Failure categories raised by the library. The CLI maps each category to
/// an exit code (see `exit_code_for`).
enum class ErrorKind {
  // input / schema
  Validation,
  Schema,
  Io,
  // polynomials
  RemainderTooLarge,
  NoConvergence,
  ZeroConstantTerm,
  ModulusExceedsZ,
  // forward scattering
  PoleAt,
  UndefinedAtZero,
  RouteDisagreement,
  NonSimplePole,
  // transformation kernels
  CrossCheckFailure,
  QuadratureDisagreement,
  // inverse reconstruction
  NonRealCoefficients,
  CommonRoot,
  BothBranchesUnavailable,
  NegativeASquared,
  VanishingB0,
  NonPositiveA2,
  NoTermination,
  DivisionResidual,
  InconsistentData,
  // stability harness
  GapTooSmall,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// 1 for I/O, 2 for validation/schema failures, 3 for numeric failures.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace jacobi
