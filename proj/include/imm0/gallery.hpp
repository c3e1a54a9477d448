#pragma once

// Reference curves: circles, the Gerono figure-eight, canonical curves and
// seeded random degree-0 immersions.

#include "imm0/curve.hpp"

#include <cstdint>

namespace imm0 {

/// (cos k theta, sin k theta).
PeriodicCurve circle(Eigen::Index samples, int turns = 1);

/// Horizontal Gerono lemniscate (sin theta, sin(2 theta) / 2).
PeriodicCurve figure_eight(Eigen::Index samples);

struct RandomImmersionOptions {
  int lift_modes = 8;
  int weight_modes = 4;
  double weight_amplitude = 0.4;
  double min_var = kPi + 1.0;  // variation range of the tangent lift
  double max_var = 3.0 * kPi;
};

/// Degree-0 immersion with a random band-limited tangent lift and a random
/// closed speed from the weighted canonical section; deterministic in `seed`.
PeriodicCurve random_immersion(std::uint64_t seed, Eigen::Index samples, const RandomImmersionOptions& options = {});

}  // namespace imm0
