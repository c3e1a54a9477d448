#pragma once

// Regular homotopy from a degree-0 immersion to the canonical circle family:
// translation to the origin, a straight-line retraction inside the convex
// fiber of speeds over the tangent loop, then a contraction of the tangent
// loop conjugated by the variation rescaling g.

#include "imm0/curve.hpp"
#include "imm0/sequence.hpp"
#include "imm0/tolerances.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace imm0 {

/// Minimizer of F(lambda) = mean(w * exp(-<lambda, e>)); speed = w * exp(-<lambda*, e>).
struct CanonicalSection {
  Eigen::Vector2d lambda = Eigen::Vector2d::Zero();
  int iterations = 0;
};

/// Three bump speeds centered at theta_i, combined with positive weights a_i.
struct TriangleSection {
  std::array<double, 3> thetas{};
  std::array<Eigen::Index, 3> indices{};
  double half_width = 0.0;
  int halvings = 0;
  Eigen::Vector3d weights = Eigen::Vector3d::Zero();  // a_1, a_2, a_3 (a_3 = 1)
  std::array<Complex, 3> moments{};                   // I_i = int v_i e dtheta
};

inline constexpr int kTriangleCandidates = 48;
inline constexpr double kBumpFloor = 1e-6;

/// The canonical section: positive, exactly closed speed over a loop whose
/// image is longer than pi.
std::pair<SpeedFunction, CanonicalSection> canonical_speed(const UnitLoop& e, const Tolerances& tol = {});

/// canonical_speed with a positive weight w multiplying the exponential; any
/// positive smooth w yields another closed speed in the same fiber.
std::pair<SpeedFunction, CanonicalSection> weighted_canonical_speed(const UnitLoop& e, const Eigen::VectorXd& weight,
                                                                    const Tolerances& tol = {});

/// Local section from a triangle of tangent directions containing the origin.
std::pair<SpeedFunction, TriangleSection> triangle_section(const UnitLoop& e, const Tolerances& tol = {});

/// (1 - t) v + t canonical_speed(e).
SpeedFunction fiber_retract(const SpeedFunction& v, const UnitLoop& e, double t, const Tolerances& tol = {});
SpeedFunction fiber_retract(const SpeedFunction& from, const SpeedFunction& to, double t);

enum class GDirection { Forward, Inverse };

/// Deviation from the average rescaled so that Var grows (Forward) or
/// shrinks (Inverse) by exactly pi.
Eigen::VectorXd g_transform(const Eigen::VectorXd& lift, GDirection direction);

template <typename Derived>
Eigen::VectorXd g_transform(const Eigen::MatrixBase<Derived>& lift, GDirection direction) {
  return g_transform(Eigen::VectorXd(lift), direction);
}

/// u -> phi * exp(i sin u).
UnitLoop ev1_section(Complex phi, Eigen::Index samples);

/// g-conjugate of ev1_section(phi): exp(i (arg phi + (1 + pi/2) sin u)).
UnitLoop canonical_loop(Complex phi, Eigen::Index samples);

/// Closed curve through the origin with tangent loop canonical_loop(phi) and canonical speed.
PeriodicCurve canonical_curve(Complex phi, Eigen::Index samples, const Tolerances& tol = {});

/// Deformation of a degree-0 tangent loop onto the canonical family.
///
/// The lift a is pulled down by g^{-1}, split into its value at theta_0 and a
/// based remainder f, and f is contracted to sin through nonzero loops. Every
/// waypoint is pushed back up by g, so its image stays longer than pi.
class LoopRetraction {
 public:
  explicit LoopRetraction(const UnitLoop& e, Eigen::Index modes = kDefaultModes, const Tolerances& tol = {});

  UnitLoop at(double t) const;
  /// Based loop downstairs at time t (before adding the base value and applying g).
  BasedLoopFunction based_loop_at(double t) const;
  Complex phi_final() const { return std::polar(1.0, base_value_); }

 private:
  LoopRetraction(const Eigen::VectorXd& down, Eigen::Index modes);
  static Eigen::VectorXd pull_down(const UnitLoop& e, const Tolerances& tol);

  Eigen::Index samples_;
  double base_value_;
  BasedLoopFunction based_;
  RapidSequence sequence_;
  Eigen::VectorXd tail_;
};

UnitLoop retract_loop(const UnitLoop& e, double t, Eigen::Index modes = kDefaultModes, const Tolerances& tol = {});

enum class Stage { Translate, FiberRetract, LoopContract };

std::string_view to_string(Stage stage);
Stage stage_from_string(std::string_view name);

struct Frame {
  double t = 0.0;
  Stage stage = Stage::Translate;
  PeriodicCurve curve;
  double min_speed = 0.0;
  double closure_residual = 0.0;
};

struct HomotopyPath {
  Complex phi_final{1.0, 0.0};
  std::vector<Frame> frames;
};

inline constexpr double kTranslateEnd = 0.1;
inline constexpr double kFiberEnd = 0.3;

struct RetractOptions {
  Eigen::Index modes = kDefaultModes;
  Tolerances tol{};
};

/// Frames at t_k = k / (n_frames - 1) of the composed regular homotopy.
HomotopyPath retract_curve(const PeriodicCurve& c, int n_frames, const RetractOptions& options = {});

/// Offline re-check of a path: immersion above the speed floor, closure,
/// degree 0, time stamps, endpoint canonicity.
struct PathReport {
  bool ok = true;
  std::vector<std::string> failures;
  double worst_speed_ratio = 0.0;      // min over frames of min speed / mean speed
  double worst_closure_ratio = 0.0;    // max over frames of residual / length
  double endpoint_error = 0.0;         // sup-norm distance to canonical_curve(phi_final)
  Eigen::Index worst_speed_frame = 0;
  Eigen::Index worst_closure_frame = 0;
};

struct FrameSamples {
  double t = 0.0;
  Stage stage = Stage::Translate;
  Eigen::VectorXcd samples;
};

PathReport validate_frames(Complex phi_final, const std::vector<FrameSamples>& frames, const Tolerances& tol = {});
PathReport validate_path(const HomotopyPath& path, const Tolerances& tol = {});

}  // namespace imm0
