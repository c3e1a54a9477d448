#pragma once

namespace imm0 {

/// Numerical thresholds shared by the analysis and retraction code.
///
/// Relative thresholds are multiplied by the natural scale of the object
/// under test (mean speed for immersion, curve length for closure).
struct Tolerances {
  double immersion = 1e-8;       // min speed > immersion * mean speed
  double closure = 1e-8;         // |sum v e dtheta| < closure * length
  double winding_residual = 1e-6;
  double newton_gradient = 1e-12;
  double hull_margin = 1e-6;     // image length must exceed pi + hull_margin
  double speed_floor = 1e-3;     // along a homotopy path, relative to mean speed
  double endpoint = 1e-6;        // sup-norm match of path endpoint and canonical curve

  /// Every threshold multiplied by `factor`.
  Tolerances scaled(double factor) const;

  /// Defaults scaled by the IMM0_TOL_SCALE environment variable (1 if unset).
  static Tolerances from_env();
};

}  // namespace imm0
