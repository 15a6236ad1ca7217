#include "matpfd/error.hpp"

namespace matpfd {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorKind::SingularSeriesDivision: return "SingularSeriesDivision";
    case ErrorKind::IrrationalSpectrum: return "IrrationalSpectrum";
    case ErrorKind::RepeatedQuadraticFactor: return "RepeatedQuadraticFactor";
    case ErrorKind::HintMismatch: return "HintMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ExtensionMismatch: return "ExtensionMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::InconsistentSystem: return "InconsistentSystem";
    case ErrorKind::SampleCollision: return "SampleCollision";
    case ErrorKind::EvalAtPole: return "EvalAtPole";
    case ErrorKind::NotAGeneralizedEigenvector: return "NotAGeneralizedEigenvector";
    case ErrorKind::IncompleteBasis: return "IncompleteBasis";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::ModeUnsupported: return "ModeUnsupported";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::Empty: return "Empty";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  return kind == ErrorKind::ParseError || kind == ErrorKind::NonSquare ||
         kind == ErrorKind::Empty;
}

}  // namespace matpfd
