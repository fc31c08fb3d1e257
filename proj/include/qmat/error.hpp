#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmat {

enum class ErrorKind {
  DivisionByZero,
  InvalidDimension,
  IndexOutOfRange,
  NotAMonomial,
  NotCentral,
  NotInLattice,
  InvalidSpec,
  ResourceLimit,
  PivotNotMonomial,
  NotADerivation,
  Inconsistent,
  ConditionViolated,
  NotPolynomial,
  NotInSpan,
  ExponentOverflow,
  ParseError,
  DimensionMismatch,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotAMonomial: return "NotAMonomial";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotInLattice: return "NotInLattice";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::PivotNotMonomial: return "PivotNotMonomial";
    case ErrorKind::NotADerivation: return "NotADerivation";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::NotPolynomial: return "NotPolynomial";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qmat
