#pragma once

#include <stdexcept>
#include <string>

namespace elp {

/// Failure categories shared by all modules. Numerical routines throw
/// Error with the matching code; callers that care dispatch on code().
enum class ErrCode {
  NoSignChange,
  NonFinite,
  MaxIterExceeded,
  Singular,
  SeedNotOnCurve,
  GradientVanished,
  BracketFailure,
  OutOfRange,
  MassOutOfRange,
  DegenerateFamily,
  Pole,
  Collision,
  RootNotFound,
  ResidualGateFailed,
  CollisionDuringIntegration,
};

const char* to_string(ErrCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg),
        code_(code) {}

  ErrCode code() const noexcept { return code_; }

 private:
  ErrCode code_;
};

}  // namespace elp
