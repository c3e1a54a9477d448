#include "imm0/error.hpp"
#include "imm0/sequence.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace imm0;
using imm0::testing::random_based_loop;
using imm0::testing::random_sequence;

namespace {

template <typename Fn>
void expect_error(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

BasedLoopFunction based(Eigen::Index n, auto&& fn) {
  const Eigen::VectorXd u = parameter_grid(n);
  Eigen::VectorXd f(n);
  for (Eigen::Index j = 0; j < n; ++j) f(j) = fn(u(j));
  return BasedLoopFunction::from_samples(f);
}

// Odd interleave computed by hand: (b_1, 0, b_2, 0, ...).
Eigen::VectorXcd odd_interleave(const RapidSequence& b) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(2 * b.size());
  for (Eigen::Index n = 1; n <= b.size(); ++n) e(2 * n - 2) = b(n);
  return e;
}

RapidSequence unit_odd_sequence(std::mt19937_64& rng, Eigen::Index m) {
  const RapidSequence raw = random_sequence(rng, m);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
  for (Eigen::Index n = 1; n <= m; n += 2) e(n - 1) = raw(n);
  return RapidSequence(e / e.norm());
}

}  // namespace

TEST(LoopToSequence, Examples) {
  const RapidSequence s = loop_to_sequence(based(1024, [](double u) { return std::sin(u); }));
  EXPECT_EQ(s.size(), kDefaultModes);
  EXPECT_LT(std::abs(s(1) - Complex(0.0, -0.5)), 1e-15);
  EXPECT_LT(s.entries().tail(kDefaultModes - 1).norm(), 1e-15);

  const RapidSequence c = loop_to_sequence(based(1024, [](double u) { return std::cos(u) - 1.0; }));
  EXPECT_LT(std::abs(c(1) - Complex(0.5)), 1e-15);
  EXPECT_NEAR(-2.0 * c(1).real(), -1.0, 1e-15);
}

TEST(SequenceToLoop, Examples) {
  const Eigen::VectorXd u = parameter_grid(256);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(8);
  e(0) = Complex(0.0, -0.5);
  EXPECT_LT((sequence_to_loop(RapidSequence(e), 256).samples() - Eigen::VectorXd(u.array().sin())).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_EQ(sequence_to_loop(RapidSequence(Eigen::VectorXcd::Zero(8)), 256).samples(), Eigen::VectorXd::Zero(256));
  e(0) = 0.5;
  EXPECT_LT((sequence_to_loop(RapidSequence(e), 256).samples() - Eigen::VectorXd(u.array().cos() - 1.0))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(SequenceToLoop, RoundTripOfBandLimitedLoops) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const BasedLoopFunction f = random_based_loop(rng, 1024, 20);
    const BasedLoopFunction g = sequence_to_loop(loop_to_sequence(f), 1024);
    EXPECT_LT((g.samples() - f.samples()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_EQ(g.samples()(0), 0.0);
  }
}

TEST(SmoothStep, EndpointsAndMidpoint) {
  EXPECT_EQ(smooth_step(-3.0), 0.0);
  EXPECT_EQ(smooth_step(0.0), 0.0);
  EXPECT_EQ(smooth_step(0.5), 0.5);
  EXPECT_EQ(smooth_step(1.0), 1.0);
  EXPECT_EQ(smooth_step(7.0), 1.0);
  double prev = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double s = smooth_step(i / 1000.0);
    EXPECT_GE(s, prev);
    if (i >= 50 && i <= 950) EXPECT_GT(s, prev);
    EXPECT_NEAR(s + smooth_step(1.0 - i / 1000.0), 1.0, 1e-15);
    prev = s;
  }
}

TEST(ShuffleHomotopy, EndpointsAreExact) {
  std::mt19937_64 rng(3);
  for (Eigen::Index m : {1, 2, 5, 64}) {
    const RapidSequence b = random_sequence(rng, m);
    const RapidSequence a0 = shuffle_homotopy(b, 0.0);
    EXPECT_EQ(a0.entries().head(m), b.entries());
    EXPECT_EQ(a0.entries().tail(m), Eigen::VectorXcd::Zero(m));
    EXPECT_EQ(shuffle_homotopy(b, 0.5).entries(), odd_interleave(b));
  }
  EXPECT_EQ(shuffle_homotopy(contraction_target(64), 0.5).entries(), contraction_target(128).entries());
}

TEST(ShuffleHomotopy, IsAnIsometry) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const RapidSequence b = random_sequence(rng, 64);
    for (int i = 0; i <= 100; ++i) {
      const double t = 0.5 * i / 100.0;
      EXPECT_NEAR(shuffle_homotopy(b, t).l2_norm(), b.l2_norm(), 1e-12 * b.l2_norm());
    }
  }
}

TEST(ShuffleHomotopy, SeminormLipschitzBound) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> time(0.0, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const RapidSequence b = random_sequence(rng, 64), c = random_sequence(rng, 64);
    const RapidSequence diff(b.entries() - c.entries());
    const double t = time(rng);
    const RapidSequence out(shuffle_homotopy(b, t).entries() - shuffle_homotopy(c, t).entries());
    for (int k = 0; k <= 3; ++k) EXPECT_LE(out.seminorm(k), std::pow(2.0, k) * diff.seminorm(k) * (1 + 1e-12));
  }
}

TEST(ShuffleHomotopy, ContinuousInTime) {
  std::mt19937_64 rng(6);
  const RapidSequence b = random_sequence(rng, 64);
  RapidSequence prev = shuffle_homotopy(b, 0.0);
  for (int i = 1; i <= 500; ++i) {
    const RapidSequence next = shuffle_homotopy(b, i * 1e-3);
    EXPECT_LT((next.entries() - prev.entries()).norm(), 0.1 * b.l2_norm()) << "t = " << i * 1e-3;
    prev = next;
  }
}

TEST(ShuffleHomotopy, RejectsTimesOutsideRange) {
  const RapidSequence b = contraction_target(4);
  expect_error(ErrorKind::OutOfRange, [&] { shuffle_homotopy(b, -0.01); });
  expect_error(ErrorKind::OutOfRange, [&] { shuffle_homotopy(b, 0.51); });
}

TEST(SphereNormalize, Examples) {
  std::mt19937_64 rng(7);
  const RapidSequence b = random_sequence(rng, 16);
  EXPECT_EQ(sphere_normalize(b, 0.0, 1.0).entries(), b.entries());
  const RapidSequence unit = sphere_normalize(b, 1.0, 1.0);
  EXPECT_NEAR(unit.l2_norm(), 1.0, 1e-15);
  EXPECT_LT((unit.entries() - b.entries() / b.l2_norm()).norm(), 1e-15);
  EXPECT_NEAR(sphere_normalize(b, 0.3, 2.0).l2_norm(), 0.7 * b.l2_norm() + 0.6, 1e-14);
  expect_error(ErrorKind::ZeroSequence, [] { sphere_normalize(RapidSequence(Eigen::VectorXcd::Zero(4)), 0.5, 1.0); });
}

TEST(StereographicContract, Endpoints) {
  std::mt19937_64 rng(8);
  const RapidSequence b = unit_odd_sequence(rng, 8);
  EXPECT_EQ(stereographic_contract(b, 0.0).entries(), b.entries());
  EXPECT_EQ(stereographic_contract(b, 1.0).entries(), contraction_target(8).entries());
}

TEST(StereographicContract, StaysOnSphereAwayFromPole) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const RapidSequence b = unit_odd_sequence(rng, 8);
    for (int i = 0; i <= 64; ++i) {
      const RapidSequence p = stereographic_contract(b, i / 64.0);
      EXPECT_NEAR(p.l2_norm(), 1.0, 1e-9);
      // The path moves inside the southern hemisphere of the chart: the pole
      // coordinate is real and never positive, other even entries stay zero.
      EXPECT_EQ(p(2).imag(), 0.0);
      EXPECT_LE(p(2).real(), 1e-15);
      for (Eigen::Index n = 4; n <= 8; n += 2) EXPECT_EQ(p(n), Complex(0.0));
    }
  }
}

TEST(StereographicContract, MatchesSphereGeometryOracle) {
  // Oracle: with x = b, y = p* (both on the equator of the chart) the
  // inverse-chart point at time t is (2 z + (|z|^2 - 1) q) / (|z|^2 + 1) with
  // z = (1-t) b + t p*. Check that identity and that the result lies in the
  // real span of q, b and p*, written out in real coordinates.
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const RapidSequence b = unit_odd_sequence(rng, 8);
    const Eigen::VectorXcd target = contraction_target(8).entries();
    for (int i = 1; i < 16; ++i) {
      const double t = i / 16.0;
      const Eigen::VectorXcd z = (1 - t) * b.entries() + t * target;
      const double r2 = z.squaredNorm();
      const Eigen::VectorXcd p = stereographic_contract(b, t).entries();
      const double h = (r2 - 1.0) / (r2 + 1.0);
      EXPECT_NEAR(p(1).real(), h, 1e-14);
      const Eigen::VectorXcd rest = p * ((r2 + 1.0) / 2.0);
      Eigen::VectorXcd expect = z;
      expect(1) = 0.0;
      Eigen::VectorXcd got = rest;
      got(1) = 0.0;
      EXPECT_LT((got - expect).norm(), 1e-14);
    }
  }
}

TEST(StereographicContract, Preconditions) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(8);
  e(0) = 0.5;
  expect_error(ErrorKind::OutOfRange, [&] { stereographic_contract(RapidSequence(e), 0.5); });
  e(0) = 0.6;
  e(1) = 0.8;
  expect_error(ErrorKind::OutOfRange, [&] { stereographic_contract(RapidSequence(e), 0.5); });
  expect_error(ErrorKind::OutOfRange, [] { stereographic_contract(contraction_target(8), 1.5); });
}

TEST(ContractBasedLoop, Endpoints) {
  const Eigen::VectorXd sin_u = parameter_grid(1024).array().sin();
  const BasedLoopFunction s = based(1024, [](double u) { return std::sin(u); });
  EXPECT_LT((contract_based_loop(s, 1.0).samples() - sin_u).cwiseAbs().maxCoeff(), 1e-14);
  const BasedLoopFunction c = based(1024, [](double u) { return std::cos(u) - 1.0; });
  EXPECT_LT((contract_based_loop(c, 1.0).samples() - sin_u).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((contract_based_loop(c, 0.0).samples() - c.samples()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ContractBasedLoop, NeverVanishesAndStaysBased) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const BasedLoopFunction f = random_based_loop(rng, 1024, 8);
    const RapidSequence b = loop_to_sequence(f);
    for (int i = 0; i < 64; ++i) {
      const double t = i / 63.0;
      EXPECT_GT(contract_sequence(b, t).l2_norm(), 1e-3);
      const BasedLoopFunction g = contract_based_loop(f, t);
      EXPECT_LT(std::abs(g.samples()(0)), 1e-10);
    }
  }
}

TEST(ContractBasedLoop, Errors) {
  expect_error(ErrorKind::ZeroSequence,
               [] { contract_based_loop(BasedLoopFunction::from_samples(Eigen::VectorXd::Zero(1024)), 0.5); });
  expect_error(ErrorKind::NotBased, [] { BasedLoopFunction::from_samples(Eigen::VectorXd::Ones(64)); });
  // A mode-100 component does not fit into 64 modes.
  const BasedLoopFunction wide = based(1024, [](double u) { return std::sin(100 * u); });
  expect_error(ErrorKind::TailTooLarge, [&] { loop_to_sequence(wide); });
}

TEST(RapidSequence, Seminorms) {
  Eigen::VectorXcd e(3);
  e << 1.0, Complex(0.0, 0.5), 0.25;
  const RapidSequence b(e);
  EXPECT_EQ(b.seminorm(0), 1.0);
  EXPECT_EQ(b.seminorm(1), 1.0);
  EXPECT_EQ(b.seminorm(2), 2.25);
  EXPECT_EQ(b(2), Complex(0.0, 0.5));
}
