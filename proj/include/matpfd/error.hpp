#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matpfd {

enum class ErrorKind {
  DivisionByZero,
  ZeroDenominator,
  DivisionByZeroPoly,
  SingularSeriesDivision,
  IrrationalSpectrum,
  RepeatedQuadraticFactor,
  HintMismatch,
  DimensionMismatch,
  ExtensionMismatch,
  SingularMatrix,
  InconsistentSystem,
  SampleCollision,
  EvalAtPole,
  NotAGeneralizedEigenvector,
  IncompleteBasis,
  SizeLimit,
  ModeUnsupported,
  ParseError,
  NonSquare,
  Empty,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Parse and shape errors of user input, mapped to exit code 2 by the CLI.
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace matpfd
