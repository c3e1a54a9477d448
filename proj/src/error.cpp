#include "imm0/error.hpp"
#include "imm0/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace imm0 {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::BadSampleCount: return "BadSampleCount";
    case ErrorKind::NotImmersed: return "NotImmersed";
    case ErrorKind::Undersampled: return "Undersampled";
    case ErrorKind::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorKind::NonZeroDegree: return "NonZeroDegree";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NonPeriodic: return "NonPeriodic";
    case ErrorKind::BadDiffeo: return "BadDiffeo";
    case ErrorKind::NotBased: return "NotBased";
    case ErrorKind::TailTooLarge: return "TailTooLarge";
    case ErrorKind::ZeroSequence: return "ZeroSequence";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::AtPole: return "AtPole";
    case ErrorKind::VarTooSmall: return "VarTooSmall";
    case ErrorKind::HullDegenerate: return "HullDegenerate";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::NoPositiveSolution: return "NoPositiveSolution";
    case ErrorKind::InvariantBreach: return "InvariantBreach";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
      return 2;
    case ErrorKind::NewtonDiverged:
    case ErrorKind::NoPositiveSolution:
      return 4;
    default:
      return 3;
  }
}

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  t.immersion *= factor;
  t.closure *= factor;
  t.winding_residual *= factor;
  t.newton_gradient *= factor;
  t.hull_margin *= factor;
  t.speed_floor *= factor;
  t.endpoint *= factor;
  return t;
}

Tolerances Tolerances::from_env() {
  const char* raw = std::getenv("IMM0_TOL_SCALE");
  if (raw == nullptr || *raw == '\0') return Tolerances{};
  char* end = nullptr;
  const double factor = std::strtod(raw, &end);
  if (end == raw || !(factor > 0.0))
    throw Error(ErrorKind::Parse, "IMM0_TOL_SCALE must be a positive number, got '" + std::string(raw) + "'");
  return Tolerances{}.scaled(factor);
}

}  // namespace imm0
