#include "imm0/sequence.hpp"

#include "imm0/error.hpp"

#include <algorithm>
#include <string>

namespace imm0 {
namespace {

constexpr double kTailThreshold = 1e-10;
constexpr double kZeroSequence = 1e-14;
constexpr double kSphereSlack = 1e-9;

// Unit rotation (cos, sin) of angle p*pi/2 with exact values at p = 0 and p = 1.
std::pair<double, double> quarter_turn(double p) {
  if (p <= 0.0) return {1.0, 0.0};
  if (p >= 1.0) return {0.0, 1.0};
  const double angle = 0.5 * kPi * p;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

double RapidSequence::seminorm(int k) const {
  double out = 0.0;
  for (Eigen::Index n = 1; n <= size(); ++n)
    out = std::max(out, std::abs(entries_(n - 1)) * std::pow(static_cast<double>(n), k));
  return out;
}

RapidSequence RapidSequence::resized(Eigen::Index capacity) const {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(capacity);
  const Eigen::Index keep = std::min(capacity, size());
  e.head(keep) = entries_.head(keep);
  return RapidSequence(std::move(e));
}

BasedLoopFunction BasedLoopFunction::from_samples(Eigen::VectorXd samples) {
  if (samples.size() == 0) throw Error(ErrorKind::BadSampleCount, "empty loop function");
  if (!(std::abs(samples(0)) < 1e-10))
    throw Error(ErrorKind::NotBased, "f(0) = " + std::to_string(samples(0)) + " is not 0");
  return BasedLoopFunction(std::move(samples));
}

RapidSequence loop_to_sequence(const BasedLoopFunction& f, Eigen::Index modes) {
  const Eigen::Index n = f.size();
  if (modes < 1 || 2 * modes >= n)
    throw Error(ErrorKind::BadSampleCount,
                std::to_string(modes) + " modes do not fit on " + std::to_string(n) + " samples");
  const Eigen::VectorXcd c = fourier_coefficients(f.samples());
  double total = 0.0;
  double tail = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double energy = std::norm(c(j));
    total += energy;
    if (std::abs(wave_number(j, n)) > modes) tail += energy;
  }
  if (tail > kTailThreshold * total)
    throw Error(ErrorKind::TailTooLarge, "energy beyond mode " + std::to_string(modes) + " is " +
                                             std::to_string(tail / total) + " of the total; raise the mode count");
  return RapidSequence(c.segment(1, modes));
}

BasedLoopFunction sequence_to_loop(const RapidSequence& b, Eigen::Index samples) {
  if (2 * b.size() >= samples)
    throw Error(ErrorKind::BadSampleCount,
                std::to_string(b.size()) + " modes do not fit on " + std::to_string(samples) + " samples");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(samples);
  double a0 = 0.0;
  for (Eigen::Index m = 1; m <= b.size(); ++m) {
    c(m) = b(m);
    c(samples - m) = std::conj(b(m));
    a0 -= 2.0 * b(m).real();
  }
  c(0) = a0;
  Eigen::VectorXd f = synthesize(c).real();
  f(0) = 0.0;
  return BasedLoopFunction::from_samples(std::move(f));
}

RapidSequence shuffle_homotopy(const RapidSequence& b, double t) {
  if (!(t >= 0.0 && t <= 0.5))
    throw Error(ErrorKind::OutOfRange, "shuffle time " + std::to_string(t) + " outside [0, 1/2]");
  const Eigen::Index m = b.size();
  RapidSequence out = b.resized(2 * m);
  if (t == 0.0) return out;

  // Stage n lives on [1/(n+1), 1/n]. Entries b_1..b_{n-1} are frozen; each
  // later b_j turns from position 2j-n to 2j-n+1 by a quarter rotation, so the
  // stage carries (b_1..b_n, 0, b_{n+1}, 0, ...) to (b_1..b_{n-1}, 0, b_n, 0, ...).
  const Eigen::Index stage = std::max<Eigen::Index>(2, static_cast<Eigen::Index>(std::floor(1.0 / t)));
  if (stage > m) return out;
  const double nd = static_cast<double>(stage);
  const auto [cs, sn] = quarter_turn(smooth_step(nd * ((nd + 1.0) * t - 1.0)));

  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(2 * m);
  for (Eigen::Index j = 1; j < stage; ++j) e(j - 1) = b(j);
  for (Eigen::Index j = stage; j <= m; ++j) {
    const Eigen::Index pos = 2 * j - stage;  // 1-based
    e(pos - 1) = b(j) * cs;
    e(pos) = b(j) * sn;
  }
  return RapidSequence(std::move(e));
}

RapidSequence sphere_normalize(const RapidSequence& b, double t, double target_norm) {
  const double norm = b.l2_norm();
  if (!(norm >= kZeroSequence)) throw Error(ErrorKind::ZeroSequence, "cannot normalize the zero sequence");
  if (!(target_norm > 0.0)) throw Error(ErrorKind::OutOfRange, "target norm must be positive");
  if (t == 0.0) return b;
  const double radius = (1.0 - t) * norm + t * target_norm;
  return RapidSequence(b.entries() * (radius / norm));
}

RapidSequence contraction_target(Eigen::Index capacity) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(capacity);
  e(0) = Complex(0.0, -1.0);
  return RapidSequence(std::move(e));
}

RapidSequence stereographic_contract(const RapidSequence& b, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorKind::OutOfRange, "contraction time " + std::to_string(t) + " outside [0, 1]");
  if (b.size() < 2) throw Error(ErrorKind::BadSampleCount, "stereographic chart needs at least two entries");
  if (!(std::abs(b.l2_norm() - 1.0) <= kSphereSlack))
    throw Error(ErrorKind::OutOfRange, "sequence is not on the unit sphere (norm " + std::to_string(b.l2_norm()) + ")");
  for (Eigen::Index n = 2; n <= b.size(); n += 2) {
    if (std::abs(b(n)) >= kSphereSlack)
      throw Error(ErrorKind::OutOfRange, "entry b_" + std::to_string(n) + " is not zero; chart needs odd support");
  }
  const Eigen::Index cap = b.size();
  Eigen::VectorXcd pole = Eigen::VectorXcd::Zero(cap);
  pole(1) = 1.0;
  if ((b.entries() - pole).norm() < kSphereSlack) throw Error(ErrorKind::AtPole, "sequence sits at the chart pole");
  if (t == 0.0) return b;
  const RapidSequence target = contraction_target(cap);
  if (t == 1.0) return target;

  auto chart = [&](const Eigen::VectorXcd& p) -> Eigen::VectorXcd {
    const double h = p(1).real();
    Eigen::VectorXcd x = p;
    x(1) = Complex(0.0, p(1).imag());
    return x / (1.0 - h);
  };
  const Eigen::VectorXcd x = (1.0 - t) * chart(b.entries()) + t * chart(target.entries());
  const double r2 = x.squaredNorm();
  Eigen::VectorXcd out = 2.0 * x;
  out(1) += r2 - 1.0;
  return RapidSequence(out / (r2 + 1.0));
}

RapidSequence contract_sequence(const RapidSequence& b, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorKind::OutOfRange, "contraction time " + std::to_string(t) + " outside [0, 1]");
  if (!(b.l2_norm() >= 1e-10)) throw Error(ErrorKind::ZeroSequence, "the zero loop cannot be contracted");
  const Eigen::Index cap = 2 * b.size();
  const double radius = kCanonicalLoopNorm;
  if (t <= 0.25) return sphere_normalize(b, 4.0 * t, radius).resized(cap);

  const RapidSequence on_sphere = sphere_normalize(b, 1.0, radius);
  if (t <= 0.5) return shuffle_homotopy(on_sphere, 0.5 * (4.0 * t - 1.0));

  const RapidSequence odd = shuffle_homotopy(on_sphere, 0.5);
  if (t <= 0.75) {
    const RapidSequence unit(odd.entries() / radius);
    return RapidSequence(stereographic_contract(unit, 4.0 * t - 2.0).entries() * radius);
  }
  const RapidSequence end(contraction_target(cap).entries() * radius);
  return sphere_normalize(end, 4.0 * t - 3.0, radius);
}

BasedLoopFunction contract_based_loop(const BasedLoopFunction& f, double t, Eigen::Index modes) {
  return sequence_to_loop(contract_sequence(loop_to_sequence(f, modes), t), f.size());
}

}  // namespace imm0
