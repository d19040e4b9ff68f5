#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stabkit {

enum class ErrorKind {
  ZeroPolynomial,
  MarginalCase,
  MarginalRoot,
  ZeroDenominator,
  NotProper,
  DimensionMismatch,
  DegenerateLoop,
  IdenticalFunctions,
  DegenerateCrossRatio,
  InvalidTriple,
  ConstantFunction,
  PreimageOnBoundary,
  NonPositiveParameter,
  OutOfDisc,
  InvalidSpec,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above, so
/// callers (and the CLI) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stabkit
