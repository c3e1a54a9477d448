#pragma once

// Based periodic functions as Fourier sequences, and the homotopies used to
// contract the nonzero ones onto sin(theta) without passing through zero.

#include "imm0/spectral.hpp"

#include <Eigen/Core>

#include <cmath>
#include <utility>

namespace imm0 {

/// Truncated coefficient sequence (b_1, ..., b_M); entries(0) holds b_1.
class RapidSequence {
 public:
  RapidSequence() = default;
  explicit RapidSequence(Eigen::VectorXcd entries) : entries_(std::move(entries)) {}

  Eigen::Index size() const { return entries_.size(); }
  const Eigen::VectorXcd& entries() const { return entries_; }
  /// 1-based access, b(n) == b_n.
  Complex operator()(Eigen::Index n) const { return entries_(n - 1); }

  double l2_norm() const { return entries_.norm(); }
  /// sup_n |b_n| * n^k.
  double seminorm(int k) const;
  /// Zero-padded (or truncated) copy with `capacity` entries.
  RapidSequence resized(Eigen::Index capacity) const;

 private:
  Eigen::VectorXcd entries_;
};

/// Real periodic samples with f(theta_0) = 0.
class BasedLoopFunction {
 public:
  static BasedLoopFunction from_samples(Eigen::VectorXd samples);

  Eigen::Index size() const { return samples_.size(); }
  const Eigen::VectorXd& samples() const { return samples_; }

 private:
  explicit BasedLoopFunction(Eigen::VectorXd samples) : samples_(std::move(samples)) {}
  Eigen::VectorXd samples_;
};

inline constexpr Eigen::Index kDefaultModes = 64;

/// b_n = a_n (n = 1..modes) where f = sum_n a_n exp(i n theta).
RapidSequence loop_to_sequence(const BasedLoopFunction& f, Eigen::Index modes = kDefaultModes);

/// f = a_0 + 2 Re sum_n b_n exp(i n theta) with a_0 = -2 Re sum_n b_n, so f(0) = 0.
BasedLoopFunction sequence_to_loop(const RapidSequence& b, Eigen::Index samples);

/// C-infinity step: 0 on (-inf, 0], 1 on [1, inf), strictly increasing between.
template <typename Scalar>
Scalar smooth_step(Scalar x) {
  auto sigma = [](Scalar y) { return y > Scalar(0) ? Scalar(std::exp(-Scalar(1) / y)) : Scalar(0); };
  if (x <= Scalar(0)) return Scalar(0);
  if (x >= Scalar(1)) return Scalar(1);
  const Scalar a = sigma(x);
  const Scalar b = sigma(Scalar(1) - x);
  return a / (a + b);
}

/// Isometric interleaving homotopy for t in [0, 1/2]: A_0 = id and
/// A_{1/2}(b_1, b_2, ...) = (b_1, 0, b_2, 0, ...). Output has 2*size() entries.
RapidSequence shuffle_homotopy(const RapidSequence& b, double t);

/// b * r(t) / |b| with r(t) = (1 - t)|b| + t * target_norm.
RapidSequence sphere_normalize(const RapidSequence& b, double t, double target_norm);

/// The contraction target (-i, 0, 0, ...), padded to `capacity`.
RapidSequence contraction_target(Eigen::Index capacity);

/// Straight-line contraction to contraction_target() in the stereographic chart
/// of the unit sphere projected from the pole at the real part of b_2.
RapidSequence stereographic_contract(const RapidSequence& b, double t);

/// Norm of the sequence of sin(theta); the working sphere of the contraction.
inline constexpr double kCanonicalLoopNorm = 0.5;

/// The sequence-space path of contract_based_loop, on the fixed schedule
/// [0, 1/4] normalize, [1/4, 1/2] shuffle, [1/2, 3/4] chart contraction,
/// [3/4, 1] final radial stage.
RapidSequence contract_sequence(const RapidSequence& b, double t);

/// Contracts a nonzero based loop to sin(theta); never passes through zero.
BasedLoopFunction contract_based_loop(const BasedLoopFunction& f, double t, Eigen::Index modes = kDefaultModes);

}  // namespace imm0
