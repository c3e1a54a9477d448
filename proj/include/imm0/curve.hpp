#pragma once

// Immersed closed plane curves: sampled representation, spectral calculus,
// rotation degree, tangent-angle lifts and the speed/tangent decomposition.

#include "imm0/spectral.hpp"
#include "imm0/tolerances.hpp"

#include <Eigen/Core>

#include <utility>

namespace imm0 {

/// A closed plane curve sampled at theta_j = 2*pi*j/N, N a power of two.
///
/// Construction validates that the curve is immersed and that consecutive
/// unit tangents turn by less than pi/2. The spectral velocity is cached.
class PeriodicCurve {
 public:
  static PeriodicCurve from_samples(Eigen::VectorXcd samples, const Tolerances& tol = {});
  /// Samples of sum_k c_k exp(i k theta) for k = n_min, n_min+1, ...
  static PeriodicCurve from_fourier(const Eigen::VectorXcd& coefficients, int n_min, Eigen::Index n,
                                    const Tolerances& tol = {});

  Eigen::Index size() const { return samples_.size(); }
  const Eigen::VectorXcd& samples() const { return samples_; }
  const Eigen::VectorXcd& velocity() const { return velocity_; }
  Eigen::VectorXd speed() const { return velocity_.cwiseAbs(); }
  double length() const { return periodic_integral(velocity_.cwiseAbs()); }

  /// Rotation by the unit complex `phi` about the origin.
  PeriodicCurve rotated(Complex phi) const;
  /// The curve traversed backwards, theta -> -theta.
  PeriodicCurve reversed() const;
  PeriodicCurve translated(Complex offset) const;
  PeriodicCurve scaled(double factor) const;

 private:
  PeriodicCurve(Eigen::VectorXcd samples, Eigen::VectorXcd velocity)
      : samples_(std::move(samples)), velocity_(std::move(velocity)) {}

  Eigen::VectorXcd samples_;
  Eigen::VectorXcd velocity_;
};

/// Unit tangent indicatrix e: S^1 -> S^1 on the sample grid.
class UnitLoop {
 public:
  /// Normalizes the input pointwise; rejects zeros and loops whose consecutive
  /// samples turn by pi/2 or more.
  static UnitLoop from_samples(const Eigen::VectorXcd& samples);
  /// exp(i * angles).
  static UnitLoop from_angles(const Eigen::VectorXd& angles);

  Eigen::Index size() const { return samples_.size(); }
  const Eigen::VectorXcd& samples() const { return samples_; }
  Complex operator()(Eigen::Index j) const { return samples_(j); }

 private:
  explicit UnitLoop(Eigen::VectorXcd samples) : samples_(std::move(samples)) {}
  Eigen::VectorXcd samples_;
};

/// Strictly positive periodic speed v = |c'|.
class SpeedFunction {
 public:
  static SpeedFunction from_samples(Eigen::VectorXd samples);

  Eigen::Index size() const { return samples_.size(); }
  const Eigen::VectorXd& samples() const { return samples_; }
  double operator()(Eigen::Index j) const { return samples_(j); }

 private:
  explicit SpeedFunction(Eigen::VectorXd samples) : samples_(std::move(samples)) {}
  Eigen::VectorXd samples_;
};

/// Continuous angle a with e = exp(i a); a(theta + 2*pi) = a(theta) + 2*pi*degree.
struct ArgumentLift {
  Eigen::VectorXd samples;
  int degree = 0;
};

Eigen::VectorXcd derivative(const PeriodicCurve& c);

/// Winding number of c' around the origin.
int rotation_degree(const PeriodicCurve& c, const Tolerances& tol = {});
int rotation_degree(const UnitLoop& e, const Tolerances& tol = {});

/// Lift with a(theta_0) in (-pi, pi] continued by principal-value increments.
ArgumentLift argument_lift(const UnitLoop& e);

/// (c - c(0), c(0)).
std::pair<PeriodicCurve, Complex> normalize_basepoint(const PeriodicCurve& c);

/// |sum_j v_j e_j dtheta|, the discrete closure defect of a speed/tangent pair.
double closure_residual(const SpeedFunction& v, const UnitLoop& e);

/// (v, e) = (|c'|, c'/|c'|). Degree-0 curves are checked for closure.
std::pair<SpeedFunction, UnitLoop> phi_decompose(const PeriodicCurve& c, const Tolerances& tol = {});

/// Spectral antiderivative of v*e starting at the origin.
PeriodicCurve phi_reconstruct(const SpeedFunction& v, const UnitLoop& e, const Tolerances& tol = {});

/// Length-weighted mean tangent angle, exponentiated. Defined for degree 0 only.
Complex average_argument(const PeriodicCurve& c, const Tolerances& tol = {});

struct VariationAverage {
  double var = 0.0;  // max - min
  double ave = 0.0;  // mean over one period
};

VariationAverage variation_average(const Eigen::VectorXd& periodic);
VariationAverage variation_average(const ArgumentLift& a);

/// Arc length of the image of a degree-0 loop: min(2*pi, Var(lift)).
double image_length(const UnitLoop& e);

struct ImageGap {
  double length = 0.0;
  Complex center{1.0, 0.0};
};

/// The arc of directions the loop never takes, as length and mid direction.
ImageGap image_gap(const UnitLoop& e);

/// c o phi with phi(u) = u + eps*sin(u), resampled by trigonometric interpolation.
PeriodicCurve reparametrize(const PeriodicCurve& c, double eps, const Tolerances& tol = {});

/// Constant-speed reparametrization with the same base point.
PeriodicCurve arclength_reparametrize(const PeriodicCurve& c, const Tolerances& tol = {});

/// Band-limited resampling of the curve onto `n` points.
PeriodicCurve resample(const PeriodicCurve& c, Eigen::Index n, const Tolerances& tol = {});

}  // namespace imm0
