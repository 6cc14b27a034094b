#pragma once

#include <stdexcept>
#include <string>

namespace byzmac {

enum class Errc {
  NonStochastic,
  NegativeEntry,
  UnknownChannel,
  LengthMismatch,
  SymbolOutOfRange,
  AlphabetMismatch,
  OverlappingGroups,
  Degenerate,
  ShapeMismatch,
  NonIntegerType,
  TooLarge,
  BudgetExceeded,
  SizeMismatch,
  TrivialCode,
  InfeasibleConstraintSet,
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonStochastic: return "NonStochastic";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::UnknownChannel: return "UnknownChannel";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::OverlappingGroups: return "OverlappingGroups";
    case Errc::Degenerate: return "Degenerate";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonIntegerType: return "NonIntegerType";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::TrivialCode: return "TrivialCode";
    case Errc::InfeasibleConstraintSet: return "InfeasibleConstraintSet";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace byzmac
