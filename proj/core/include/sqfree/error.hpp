#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqfree {

enum class ErrorCode {
  InvalidArgument,        // precondition violated by the caller
  NotOneModFour,
  FactorizationOverflow,
  RangeTooLarge,
  DegenerateFit,
  OutOfRange,
  BadTriple,
  DegenerateDenominator,
  FullRank,
  DegenerateLattice,
  NonIntegralPreimage,
  VerificationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Precondition failures map to exit code 2 in the CLI; everything else is operational.
  bool is_validation() const noexcept {
    return code_ == ErrorCode::InvalidArgument || code_ == ErrorCode::OutOfRange ||
           code_ == ErrorCode::RangeTooLarge || code_ == ErrorCode::FactorizationOverflow ||
           code_ == ErrorCode::BadTriple;
  }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotOneModFour: return "NotOneModFour";
    case ErrorCode::FactorizationOverflow: return "FactorizationOverflow";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadTriple: return "BadTriple";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::FullRank: return "FullRank";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::NonIntegralPreimage: return "NonIntegralPreimage";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

}  // namespace sqfree
