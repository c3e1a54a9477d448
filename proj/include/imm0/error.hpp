#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace imm0 {

enum class ErrorKind {
  Parse,
  BadSampleCount,
  NotImmersed,
  Undersampled,
  NonIntegerWinding,
  NonZeroDegree,
  NotClosed,
  NonPeriodic,
  BadDiffeo,
  NotBased,
  TailTooLarge,
  ZeroSequence,
  OutOfRange,
  AtPole,
  VarTooSmall,
  HullDegenerate,
  NewtonDiverged,
  NoPositiveSolution,
  InvariantBreach,
};

std::string_view to_string(ErrorKind kind);

// Process exit code for a failure of this kind: 2 parse, 3 invariant, 4 numeric.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace imm0
