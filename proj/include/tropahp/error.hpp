#pragma once

#include <stdexcept>
#include <string>

namespace tropahp {

enum class ErrorCode {
  DimensionMismatch,
  NotSquare,
  ZeroMatrix,
  NonPositive,
  NegativeEntry,
  TrExceedsOne,
  NoPositiveSolution,
  ZeroSpectralRadius,
  Validation,
  Parse,
  NonConvergence,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown when a reciprocal comparison matrix or a problem document fails
// validation; the message names the matrix and the 1-based cell.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCode::Validation, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ErrorCode::Parse, what) {}
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NotSquare: return "matrix is not square";
    case ErrorCode::ZeroMatrix: return "zero matrix";
    case ErrorCode::NonPositive: return "non-positive entry";
    case ErrorCode::NegativeEntry: return "negative or non-finite entry";
    case ErrorCode::TrExceedsOne: return "Tr(A) exceeds one";
    case ErrorCode::NoPositiveSolution: return "no positive solution";
    case ErrorCode::ZeroSpectralRadius: return "zero spectral radius";
    case ErrorCode::Validation: return "validation error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::NonConvergence: return "no convergence";
    case ErrorCode::InvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

}  // namespace tropahp
