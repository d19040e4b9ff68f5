#include "stabkit/errors.hpp"

namespace stabkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::MarginalCase: return "MarginalCase";
    case ErrorKind::MarginalRoot: return "MarginalRoot";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateLoop: return "DegenerateLoop";
    case ErrorKind::IdenticalFunctions: return "IdenticalFunctions";
    case ErrorKind::DegenerateCrossRatio: return "DegenerateCrossRatio";
    case ErrorKind::InvalidTriple: return "InvalidTriple";
    case ErrorKind::ConstantFunction: return "ConstantFunction";
    case ErrorKind::PreimageOnBoundary: return "PreimageOnBoundary";
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::OutOfDisc: return "OutOfDisc";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace stabkit
