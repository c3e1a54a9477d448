#include "imm0/curve.hpp"

#include "imm0/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace imm0 {
namespace {

constexpr double kHalfPi = 0.5 * kPi;

// Principal-value turning angle from e_j to e_{j+1}, wrap-around included.
Eigen::VectorXd angle_increments(const Eigen::VectorXcd& e) {
  const Eigen::Index n = e.size();
  Eigen::VectorXd inc(n);
  for (Eigen::Index j = 0; j < n; ++j) inc(j) = std::arg(e((j + 1) % n) * std::conj(e(j)));
  return inc;
}

void check_increments(const Eigen::VectorXd& inc) {
  for (Eigen::Index j = 0; j < inc.size(); ++j) {
    if (std::abs(inc(j)) >= kHalfPi) {
      throw Error(ErrorKind::Undersampled, "tangent turns by " + std::to_string(inc(j)) + " rad between samples " +
                                               std::to_string(j) + " and " + std::to_string((j + 1) % inc.size()) +
                                               " (limit pi/2); resample with more points");
    }
  }
}

int winding_from_increments(const Eigen::VectorXd& inc, const Tolerances& tol) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < inc.size(); ++j) total += inc(j);
  const double turns = total / kTwoPi;
  const double k = std::round(turns);
  if (std::abs(turns - k) >= tol.winding_residual)
    throw Error(ErrorKind::NonIntegerWinding, "winding sum " + std::to_string(turns) + " is not an integer");
  return static_cast<int>(k);
}

}  // namespace

PeriodicCurve PeriodicCurve::from_samples(Eigen::VectorXcd samples, const Tolerances& tol) {
  const Eigen::Index n = samples.size();
  if (!is_power_of_two(n) || n < 4)
    throw Error(ErrorKind::BadSampleCount, "sample count " + std::to_string(n) + " is not a power of two >= 4");
  if (!samples.allFinite()) throw Error(ErrorKind::NotImmersed, "non-finite sample");
  Eigen::VectorXcd velocity = spectral_derivative(samples);
  const Eigen::VectorXd speed = velocity.cwiseAbs();
  const double mean_speed = speed.mean();
  Eigen::Index where = 0;
  const double min_speed = speed.minCoeff(&where);
  if (!(min_speed > tol.immersion * mean_speed) || mean_speed == 0.0) {
    throw Error(ErrorKind::NotImmersed, "speed " + std::to_string(min_speed) + " at sample " + std::to_string(where) +
                                            " (mean speed " + std::to_string(mean_speed) + ")");
  }
  check_increments(angle_increments(velocity.cwiseQuotient(speed.cast<Complex>())));
  return PeriodicCurve(std::move(samples), std::move(velocity));
}

PeriodicCurve PeriodicCurve::from_fourier(const Eigen::VectorXcd& coefficients, int n_min, Eigen::Index n,
                                          const Tolerances& tol) {
  const Eigen::VectorXd grid = parameter_grid(n);
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index m = 0; m < coefficients.size(); ++m) {
    const double k = static_cast<double>(n_min + m);
    for (Eigen::Index j = 0; j < n; ++j) z(j) += coefficients(m) * std::polar(1.0, k * grid(j));
  }
  return from_samples(std::move(z), tol);
}

PeriodicCurve PeriodicCurve::rotated(Complex phi) const { return PeriodicCurve(samples_ * phi, velocity_ * phi); }

PeriodicCurve PeriodicCurve::reversed() const {
  const Eigen::Index n = size();
  Eigen::VectorXcd s(n);
  for (Eigen::Index j = 0; j < n; ++j) s(j) = samples_((n - j) % n);
  return from_samples(std::move(s));
}

PeriodicCurve PeriodicCurve::translated(Complex offset) const {
  Eigen::VectorXcd s = samples_;
  s.array() += offset;
  return PeriodicCurve(std::move(s), velocity_);
}

PeriodicCurve PeriodicCurve::scaled(double factor) const {
  if (factor > 0.0) return PeriodicCurve(samples_ * factor, velocity_ * factor);
  return from_samples(samples_ * factor);
}

UnitLoop UnitLoop::from_samples(const Eigen::VectorXcd& samples) {
  Eigen::VectorXcd e(samples.size());
  for (Eigen::Index j = 0; j < samples.size(); ++j) {
    const double r = std::abs(samples(j));
    if (!(r > 0.0) || !std::isfinite(r))
      throw Error(ErrorKind::NotImmersed, "zero or non-finite tangent at sample " + std::to_string(j));
    e(j) = samples(j) / r;
  }
  check_increments(angle_increments(e));
  return UnitLoop(std::move(e));
}

UnitLoop UnitLoop::from_angles(const Eigen::VectorXd& angles) {
  Eigen::VectorXcd e(angles.size());
  for (Eigen::Index j = 0; j < angles.size(); ++j) e(j) = std::polar(1.0, angles(j));
  check_increments(angle_increments(e));
  return UnitLoop(std::move(e));
}

SpeedFunction SpeedFunction::from_samples(Eigen::VectorXd samples) {
  for (Eigen::Index j = 0; j < samples.size(); ++j) {
    if (!(samples(j) > 0.0) || !std::isfinite(samples(j)))
      throw Error(ErrorKind::NotImmersed, "speed " + std::to_string(samples(j)) + " at sample " + std::to_string(j));
  }
  return SpeedFunction(std::move(samples));
}

Eigen::VectorXcd derivative(const PeriodicCurve& c) { return c.velocity(); }

int rotation_degree(const UnitLoop& e, const Tolerances& tol) {
  const Eigen::VectorXd inc = angle_increments(e.samples());
  check_increments(inc);
  return winding_from_increments(inc, tol);
}

int rotation_degree(const PeriodicCurve& c, const Tolerances& tol) {
  return rotation_degree(UnitLoop::from_samples(c.velocity()), tol);
}

ArgumentLift argument_lift(const UnitLoop& e) {
  const Eigen::Index n = e.size();
  const Eigen::VectorXd inc = angle_increments(e.samples());
  check_increments(inc);
  ArgumentLift lift;
  lift.samples.resize(n);
  lift.samples(0) = std::arg(e(0));
  for (Eigen::Index j = 1; j < n; ++j) lift.samples(j) = lift.samples(j - 1) + inc(j - 1);
  const double total = lift.samples(n - 1) + inc(n - 1) - lift.samples(0);
  lift.degree = static_cast<int>(std::round(total / kTwoPi));
  return lift;
}

std::pair<PeriodicCurve, Complex> normalize_basepoint(const PeriodicCurve& c) {
  const Complex offset = c.samples()(0);
  PeriodicCurve based = c.translated(-offset);
  return {std::move(based), offset};
}

double closure_residual(const SpeedFunction& v, const UnitLoop& e) {
  return std::abs(periodic_integral(v.samples().cast<Complex>().cwiseProduct(e.samples())));
}

std::pair<SpeedFunction, UnitLoop> phi_decompose(const PeriodicCurve& c, const Tolerances& tol) {
  SpeedFunction v = SpeedFunction::from_samples(c.speed());
  UnitLoop e = UnitLoop::from_samples(c.velocity());
  if (rotation_degree(e, tol) == 0) {
    const double residual = closure_residual(v, e);
    const double length = periodic_integral(v.samples());
    if (!(residual < tol.closure * length))
      throw Error(ErrorKind::NotClosed, "closure residual " + std::to_string(residual) + " for length " +
                                            std::to_string(length));
  }
  return {std::move(v), std::move(e)};
}

PeriodicCurve phi_reconstruct(const SpeedFunction& v, const UnitLoop& e, const Tolerances& tol) {
  if (v.size() != e.size()) throw Error(ErrorKind::BadSampleCount, "speed and tangent loop sizes differ");
  const Eigen::VectorXcd integrand = v.samples().cast<Complex>().cwiseProduct(e.samples());
  const double residual = std::abs(periodic_integral(integrand));
  const double length = periodic_integral(v.samples());
  if (!(residual < tol.closure * length))
    throw Error(ErrorKind::NotClosed,
                "closure residual " + std::to_string(residual) + " for length " + std::to_string(length));
  return PeriodicCurve::from_samples(spectral_antiderivative(integrand), tol);
}

Complex average_argument(const PeriodicCurve& c, const Tolerances& tol) {
  const UnitLoop e = UnitLoop::from_samples(c.velocity());
  const ArgumentLift a = argument_lift(e);
  if (a.degree != 0 || rotation_degree(e, tol) != 0)
    throw Error(ErrorKind::NonZeroDegree, "average argument needs degree 0, got " + std::to_string(a.degree));
  const Eigen::VectorXd v = c.speed();
  const double length = periodic_integral(v);
  const double weighted = periodic_integral(a.samples.cwiseProduct(v));
  return std::polar(1.0, weighted / length);
}

VariationAverage variation_average(const Eigen::VectorXd& periodic) {
  return {periodic.maxCoeff() - periodic.minCoeff(), periodic_integral(periodic) / kTwoPi};
}

VariationAverage variation_average(const ArgumentLift& a) {
  if (a.degree != 0)
    throw Error(ErrorKind::NonPeriodic, "lift of degree " + std::to_string(a.degree) + " is not periodic");
  return variation_average(a.samples);
}

double image_length(const UnitLoop& e) {
  const ArgumentLift a = argument_lift(e);
  if (a.degree != 0) throw Error(ErrorKind::NonZeroDegree, "image length needs degree 0");
  return std::min(kTwoPi, variation_average(a).var);
}

ImageGap image_gap(const UnitLoop& e) {
  const ArgumentLift a = argument_lift(e);
  if (a.degree != 0) throw Error(ErrorKind::NonZeroDegree, "image gap needs degree 0");
  const double lo = a.samples.minCoeff();
  const double hi = a.samples.maxCoeff();
  ImageGap gap;
  gap.length = std::max(0.0, kTwoPi - (hi - lo));
  // Uncovered lift interval is (hi, lo + 2*pi).
  gap.center = std::polar(1.0, 0.5 * (hi + lo) + kPi);
  return gap;
}

PeriodicCurve reparametrize(const PeriodicCurve& c, double eps, const Tolerances& tol) {
  if (!(std::abs(eps) < 1.0))
    throw Error(ErrorKind::BadDiffeo, "u + eps*sin(u) is not a diffeomorphism for eps = " + std::to_string(eps));
  if (eps == 0.0) return c;
  Eigen::VectorXd at = parameter_grid(c.size());
  at += eps * at.array().sin().matrix();
  return PeriodicCurve::from_samples(trig_interpolate(c.samples(), at), tol);
}

PeriodicCurve arclength_reparametrize(const PeriodicCurve& c, const Tolerances& tol) {
  const Eigen::Index n = c.size();
  const Eigen::VectorXd v = c.speed();
  const double mean_speed = v.mean();
  // sigma(theta) = theta + p(theta)/mean_speed is the normalized arc length.
  const Eigen::VectorXcd p =
      spectral_antiderivative(Eigen::VectorXcd((v.array() - mean_speed).matrix().cast<Complex>())) / mean_speed;
  const Eigen::VectorXcd vc = v.cast<Complex>() / mean_speed;
  const Eigen::VectorXd target = parameter_grid(n);
  // Start Newton from the piecewise-linear inverse of the sampled arc length.
  Eigen::VectorXd table(n + 1);
  table.head(n) = target + p.real();
  table(n) = kTwoPi;
  Eigen::VectorXd theta(n);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    while (k + 1 < n && table(k + 1) <= target(j)) ++k;
    const double w = (target(j) - table(k)) / (table(k + 1) - table(k));
    theta(j) = kTwoPi * (static_cast<double>(k) + w) / static_cast<double>(n);
  }
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::VectorXd sigma = theta + trig_interpolate(p, theta).real();
    const Eigen::VectorXd dsigma = trig_interpolate(vc, theta).real();
    const Eigen::VectorXd step = (sigma - target).cwiseQuotient(dsigma);
    theta -= step;
    if (step.cwiseAbs().maxCoeff() < 1e-14) break;
  }
  theta(0) = 0.0;
  Eigen::VectorXcd s = trig_interpolate(c.samples(), theta);
  s(0) = c.samples()(0);
  return PeriodicCurve::from_samples(std::move(s), tol);
}

PeriodicCurve resample(const PeriodicCurve& c, Eigen::Index n, const Tolerances& tol) {
  if (n == c.size()) return c;
  return PeriodicCurve::from_samples(imm0::resample(c.samples(), n), tol);
}

}  // namespace imm0
