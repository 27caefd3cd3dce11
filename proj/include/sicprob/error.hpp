#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sicprob {

enum class ErrorKind {
  DimensionMismatch,
  SizeOverflow,
  NotHermitian,
  NotUnitary,
  NoConvergence,
  BadDimension,
  ShapeMismatch,
  NoBuiltin,
  OffBlochSphere,
  Exhausted,
  NotNearSolution,
  NotAState,
  NotAPOVM,
  BadOutcomeCount,
  SearchBudgetExceeded,
  MalformedTable,
  ZeroEvidence,
  OutOfRange,
  InvalidArgument,
  Format,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NoBuiltin: return "NoBuiltin";
    case ErrorKind::OffBlochSphere: return "OffBlochSphere";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::NotNearSolution: return "NotNearSolution";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotAPOVM: return "NotAPOVM";
    case ErrorKind::BadOutcomeCount: return "BadOutcomeCount";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::ZeroEvidence: return "ZeroEvidence";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Format: return "Format";
  }
  return "Unknown";
}

}  // namespace sicprob
