#include "imm0/gallery.hpp"

#include "imm0/retraction.hpp"

#include <random>

namespace imm0 {

PeriodicCurve circle(Eigen::Index samples, int turns) {
  const Eigen::VectorXd u = parameter_grid(samples);
  Eigen::VectorXcd z(samples);
  for (Eigen::Index j = 0; j < samples; ++j) z(j) = std::polar(1.0, turns * u(j));
  return PeriodicCurve::from_samples(std::move(z));
}

PeriodicCurve figure_eight(Eigen::Index samples) {
  const Eigen::VectorXd u = parameter_grid(samples);
  Eigen::VectorXcd z(samples);
  for (Eigen::Index j = 0; j < samples; ++j) z(j) = Complex(std::sin(u(j)), 0.5 * std::sin(2.0 * u(j)));
  return PeriodicCurve::from_samples(std::move(z));
}

PeriodicCurve random_immersion(std::uint64_t seed, Eigen::Index samples, const RandomImmersionOptions& options) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Eigen::VectorXd u = parameter_grid(samples);

  Eigen::VectorXd lift = Eigen::VectorXd::Zero(samples);
  for (int n = 1; n <= options.lift_modes; ++n) {
    const double amp = 1.0 / n;
    const double a = amp * normal(rng), b = amp * normal(rng);
    lift += (a * (n * u.array()).cos() + b * (n * u.array()).sin()).matrix();
  }
  const double var = lift.maxCoeff() - lift.minCoeff();
  const double target = options.min_var + (options.max_var - options.min_var) * uniform(rng);
  lift = (lift * (target / var)).array() + kTwoPi * uniform(rng);

  Eigen::VectorXd log_weight = Eigen::VectorXd::Zero(samples);
  for (int n = 1; n <= options.weight_modes; ++n) {
    const double amp = options.weight_amplitude / n;
    const double a = amp * normal(rng), b = amp * normal(rng);
    log_weight += (a * (n * u.array()).cos() + b * (n * u.array()).sin()).matrix();
  }
  const Complex offset(2.0 * normal(rng), 2.0 * normal(rng));

  const UnitLoop e = UnitLoop::from_angles(lift);
  const SpeedFunction v = weighted_canonical_speed(e, log_weight.array().exp().matrix()).first;
  return phi_reconstruct(v, e).translated(offset);
}

}  // namespace imm0
