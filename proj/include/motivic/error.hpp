#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace motivic {

/// Every failure the library reports. The CLI prints the code name verbatim.
enum class ErrorCode {
  ZeroDenominator,
  ParseError,
  UnsupportedLevel,
  DivisionByZeroDiscrepancy,
  NonIntegerCoefficients,
  InvalidArgument,
  SchemaError,
  InconsistentStratumData,
  MissingMultiplicity,
  ForbiddenZeroPair,
  MissingEmptyStratum,
  NotLogTerminal,
  StrictlyLogCanonical,
  DegenerateDenominator,
  DConsistencyFailure,
  OrderMismatch,
  BudgetExceeded,
  InsufficientData,
  NonExpandable,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorCode::DivisionByZeroDiscrepancy: return "DivisionByZeroDiscrepancy";
    case ErrorCode::NonIntegerCoefficients: return "NonIntegerCoefficients";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InconsistentStratumData: return "InconsistentStratumData";
    case ErrorCode::MissingMultiplicity: return "MissingMultiplicity";
    case ErrorCode::ForbiddenZeroPair: return "ForbiddenZeroPair";
    case ErrorCode::MissingEmptyStratum: return "MissingEmptyStratum";
    case ErrorCode::NotLogTerminal: return "NotLogTerminal";
    case ErrorCode::StrictlyLogCanonical: return "StrictlyLogCanonical";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::DConsistencyFailure: return "DConsistencyFailure";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NonExpandable: return "NonExpandable";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace motivic
