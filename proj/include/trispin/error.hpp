#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trispin {

enum class ErrorCode {
  // surfaces
  ParseError,
  OddDartCount,
  NotInvolution,
  LoopEdge,
  DanglingDart,
  DuplicateDart,
  EmptyRotation,
  UnknownHole,
  AmbiguousHole,
  NotATriangulation,
  NonIntegerGenus,
  HasHoles,
  // spins
  MissingSpin,
  NotSatisfying,
  NoSatisfyingAssignment,
  CountOverflow,
  TooLarge,
  // gadgets
  TopologyMismatch,
  MissingFundamentalEdge,
  BadBoundaryRole,
  PartialBoundary,
  ContractViolation,
  // gluing
  CycleLengthMismatch,
  AmbiguousAlignment,
  EdgeNotOnCycle,
  // formulas
  BadHeader,
  WrongArity,
  VariableOutOfRange,
  UnusedVariable,
  EmptyFormula,
  ArityMismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OddDartCount: return "OddDartCount";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::DanglingDart: return "DanglingDart";
    case ErrorCode::DuplicateDart: return "DuplicateDart";
    case ErrorCode::EmptyRotation: return "EmptyRotation";
    case ErrorCode::UnknownHole: return "UnknownHole";
    case ErrorCode::AmbiguousHole: return "AmbiguousHole";
    case ErrorCode::NotATriangulation: return "NotATriangulation";
    case ErrorCode::NonIntegerGenus: return "NonIntegerGenus";
    case ErrorCode::HasHoles: return "HasHoles";
    case ErrorCode::MissingSpin: return "MissingSpin";
    case ErrorCode::NotSatisfying: return "NotSatisfying";
    case ErrorCode::NoSatisfyingAssignment: return "NoSatisfyingAssignment";
    case ErrorCode::CountOverflow: return "CountOverflow";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TopologyMismatch: return "TopologyMismatch";
    case ErrorCode::MissingFundamentalEdge: return "MissingFundamentalEdge";
    case ErrorCode::BadBoundaryRole: return "BadBoundaryRole";
    case ErrorCode::PartialBoundary: return "PartialBoundary";
    case ErrorCode::ContractViolation: return "ContractViolation";
    case ErrorCode::CycleLengthMismatch: return "CycleLengthMismatch";
    case ErrorCode::AmbiguousAlignment: return "AmbiguousAlignment";
    case ErrorCode::EdgeNotOnCycle: return "EdgeNotOnCycle";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::VariableOutOfRange: return "VariableOutOfRange";
    case ErrorCode::UnusedVariable: return "UnusedVariable";
    case ErrorCode::EmptyFormula: return "EmptyFormula";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-status mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trispin
