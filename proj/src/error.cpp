#include "jacobi/error.hpp"

namespace jacobi {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::Io: return "Io";
    case ErrorKind::RemainderTooLarge: return "RemainderTooLarge";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::ModulusExceedsZ: return "ModulusExceedsZ";
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::UndefinedAtZero: return "UndefinedAtZero";
    case ErrorKind::RouteDisagreement: return "RouteDisagreement";
    case ErrorKind::NonSimplePole: return "NonSimplePole";
    case ErrorKind::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorKind::QuadratureDisagreement: return "QuadratureDisagreement";
    case ErrorKind::NonRealCoefficients: return "NonRealCoefficients";
    case ErrorKind::CommonRoot: return "CommonRoot";
    case ErrorKind::BothBranchesUnavailable: return "BothBranchesUnavailable";
    case ErrorKind::NegativeASquared: return "NegativeASquared";
    case ErrorKind::VanishingB0: return "VanishingB0";
    case ErrorKind::NonPositiveA2: return "NonPositiveA2";
    case ErrorKind::NoTermination: return "NoTermination";
    case ErrorKind::DivisionResidual: return "DivisionResidual";
    case ErrorKind::InconsistentData: return "InconsistentData";
    case ErrorKind::GapTooSmall: return "GapTooSmall";
  }
  return "Unknown";
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Io: return 1;
    case ErrorKind::Validation:
    case ErrorKind::Schema: return 2;
    default: return 3;
  }
}

}  // namespace jacobi
