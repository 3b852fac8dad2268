#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

enum class ErrorCode {
  NearAntipode,         // log requested within the branch-ambiguity ball of -Id
  PrecisionOverflow,    // integer multiplier too large for the precision guard
  InsufficientPrecision,// fixed-point interval cannot certify a partial quotient
  RationalAlpha,        // k*alpha hit the integer lattice during a scan
  NoValidTau,           // no tau_i <= tau-1 restores the half-integer bound
  NoDominantMode,       // spectral ratio precondition of the KAM step failed
  FastPathUnavailable,  // closed-form power path needs a constant top map
  InfeasibleLevel,      // landmark-coupled resonant mode exceeds the level budget
  ConfigInvalid,        // schema violation in a config document
  Precondition,         // generic precondition failure (missing file, bad args)
};

// Exit code contract of the CLI: 0 success, 2 config, 3 precondition, 4 numerical.
inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigInvalid:
      return 2;
    case ErrorCode::RationalAlpha:
    case ErrorCode::NoValidTau:
    case ErrorCode::FastPathUnavailable:
    case ErrorCode::InfeasibleLevel:
    case ErrorCode::Precondition:
      return 3;
    default:
      return 4;
  }
}

inline const char* name_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::NearAntipode: return "NearAntipode";
    case ErrorCode::PrecisionOverflow: return "PrecisionOverflow";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::RationalAlpha: return "RationalAlpha";
    case ErrorCode::NoValidTau: return "NoValidTau";
    case ErrorCode::NoDominantMode: return "NoDominantMode";
    case ErrorCode::FastPathUnavailable: return "FastPathUnavailable";
    case ErrorCode::InfeasibleLevel: return "InfeasibleLevel";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::Precondition: return "Precondition";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(name_of(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skewlab
