#include "imm0/error.hpp"
#include "imm0/gallery.hpp"
#include "imm0/retraction.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace imm0;
using imm0::testing::random_corpus;
using imm0::testing::staircase_loop;
using imm0::testing::sup_distance;

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

UnitLoop loop_from_angles(Eigen::Index n, auto&& angle) {
  const Eigen::VectorXd u = parameter_grid(n);
  Eigen::VectorXd a(n);
  for (Eigen::Index j = 0; j < n; ++j) a(j) = angle(u(j));
  return UnitLoop::from_angles(a);
}

UnitLoop tangents(const PeriodicCurve& c) { return phi_decompose(c).second; }

// Plain trapezoid sum of v e.
Complex closure_integral(const Eigen::VectorXd& v, const UnitLoop& e) {
  Complex total(0.0);
  for (Eigen::Index j = 0; j < v.size(); ++j) total += v(j) * e(j);
  return total * (kTwoPi / static_cast<double>(v.size()));
}

double mean_exp(const UnitLoop& e, const Eigen::Vector2d& lambda) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < e.size(); ++j) total += std::exp(-lambda.x() * e(j).real() - lambda.y() * e(j).imag());
  return total / static_cast<double>(e.size());
}

// Range of an independently unwrapped angle of the loop.
double unwrapped_range(const UnitLoop& e) {
  double angle = 0.0, lo = 0.0, hi = 0.0;
  for (Eigen::Index j = 1; j < e.size(); ++j) {
    angle += std::arg(e(j) * std::conj(e(j - 1)));
    lo = std::min(lo, angle);
    hi = std::max(hi, angle);
  }
  return hi - lo;
}

}  // namespace

TEST(CanonicalSpeed, CircleTangentsNeedNoCorrection) {
  const auto [v, section] = canonical_speed(tangents(circle(256)));
  EXPECT_EQ(section.iterations, 0);
  EXPECT_EQ(section.lambda, Eigen::Vector2d::Zero());
  EXPECT_LT((v.samples().array() - 1.0).abs().maxCoeff(), 1e-15);
}

TEST(CanonicalSpeed, ThreeFoldSymmetricLoop) {
  const UnitLoop e = staircase_loop(1024);
  EXPECT_EQ(rotation_degree(e), 0);
  const auto [v, section] = canonical_speed(e);
  EXPECT_LT(section.lambda.norm(), 1e-8);
  EXPECT_LT(std::abs(closure_integral(v.samples(), e)), 1e-10);
}

TEST(CanonicalSpeed, RandomLoopsCloseAtTheMinimum) {
  for (const PeriodicCurve& c : random_corpus(20, 1024, 300)) {
    const UnitLoop e = tangents(c);
    const auto [v, section] = canonical_speed(e);
    EXPECT_GT(v.samples().minCoeff(), 0.0);
    EXPECT_LT(std::abs(closure_integral(v.samples(), e)) / v.samples().mean(), 1e-10);
    // Oracle: F is no smaller at nearby multipliers.
    const double f0 = mean_exp(e, section.lambda);
    for (int k = 0; k < 8; ++k) {
      const Eigen::Vector2d d(std::cos(k * kPi / 4), std::sin(k * kPi / 4));
      EXPECT_GE(mean_exp(e, section.lambda + 1e-4 * d), f0);
    }
  }
}

TEST(CanonicalSpeed, ShortImageIsRejected) {
  const UnitLoop e = loop_from_angles(256, [](double u) { return 1.5 * std::sin(u); });
  expect_error(ErrorKind::HullDegenerate, [&] { canonical_speed(e); });
  expect_error(ErrorKind::HullDegenerate, [&] { triangle_section(e); });
}

TEST(TriangleSection, SymmetricLoopGivesEqualWeights) {
  const auto [v, section] = triangle_section(staircase_loop(1024));
  EXPECT_GT(section.weights.minCoeff(), 0.0);
  EXPECT_NEAR(section.weights(0), 1.0, 1e-6);
  EXPECT_NEAR(section.weights(1), 1.0, 1e-6);
  EXPECT_EQ(section.weights(2), 1.0);
}

TEST(TriangleSection, ResidualVanishes) {
  std::vector<UnitLoop> loops{staircase_loop(1024), tangents(figure_eight(1024))};
  for (const PeriodicCurve& c : random_corpus(20, 1024, 500)) loops.push_back(tangents(c));
  for (const UnitLoop& e : loops) {
    const auto [v, section] = triangle_section(e);
    EXPECT_GT(section.weights.minCoeff(), 0.0);
    Complex residual(0.0);
    for (int i = 0; i < 3; ++i) residual += section.weights(i) * section.moments[i];
    EXPECT_LT(std::abs(residual), 1e-10);
    EXPECT_LT(std::abs(closure_integral(v.samples(), e)), 1e-10);
  }
}

TEST(TriangleSection, FigureEightNeedsFewHalvings) {
  const auto [v, section] = triangle_section(tangents(figure_eight(1024)));
  EXPECT_LE(section.halvings, 3);
  EXPECT_GT(section.weights.minCoeff(), 0.0);
  EXPECT_NEAR(section.half_width, kPi / kTriangleCandidates / std::pow(2.0, section.halvings), 1e-15);
}

TEST(FiberRetract, EndpointsAndConvexity) {
  const PeriodicCurve c = random_corpus(1, 1024, 42).front();
  const auto [v, e] = phi_decompose(c);
  const SpeedFunction canon = canonical_speed(e).first;
  EXPECT_EQ(fiber_retract(v, e, 0.0).samples(), v.samples());
  EXPECT_EQ(fiber_retract(v, e, 1.0).samples(), canon.samples());
  const double floor = std::min(v.samples().minCoeff(), canon.samples().minCoeff());
  for (int i = 1; i < 64; ++i) {
    const SpeedFunction w = fiber_retract(v, e, i / 64.0);
    EXPECT_GE(w.samples().minCoeff(), floor * (1 - 1e-14));
    EXPECT_LT(closure_residual(w, e), 1e-8);
  }
}

TEST(FiberRetract, BetweenTriangleAndCanonicalSections) {
  const UnitLoop e = tangents(figure_eight(1024));
  const SpeedFunction tri = triangle_section(e).first;
  const SpeedFunction canon = canonical_speed(e).first;
  for (int i = 0; i < 64; ++i) {
    const SpeedFunction w = fiber_retract(tri, canon, i / 63.0);
    EXPECT_GT(w.samples().minCoeff(), 0.0);
    EXPECT_LT(closure_residual(w, e), 1e-10);
  }
}

TEST(GTransform, Examples) {
  const Eigen::VectorXd a = parameter_grid(512).array().sin() * (kPi / 2);
  EXPECT_LT((g_transform(a, GDirection::Forward) - 2.0 * a).cwiseAbs().maxCoeff(), 1e-14);

  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd lift = Eigen::VectorXd::Constant(512, normal(rng));
    const Eigen::VectorXd u = parameter_grid(512);
    for (int k = 1; k <= 6; ++k) lift += (normal(rng) * (k * u.array()).cos() + normal(rng) * (k * u.array()).sin()).matrix();
    const VariationAverage before = variation_average(lift);
    const Eigen::VectorXd up = g_transform(lift, GDirection::Forward);
    const VariationAverage after = variation_average(up);
    EXPECT_NEAR(after.var - before.var, kPi, 1e-10);
    EXPECT_NEAR(after.ave, before.ave, 1e-12);
    EXPECT_LT((g_transform(up, GDirection::Inverse) - lift).cwiseAbs().maxCoeff(), 1e-12);
  }
  expect_error(ErrorKind::VarTooSmall, [] { g_transform(Eigen::VectorXd::Constant(16, 1.0), GDirection::Forward); });
  expect_error(ErrorKind::VarTooSmall, [&] { g_transform(a * 0.5, GDirection::Inverse); });
}

TEST(Ev1Section, Examples) {
  const Eigen::VectorXd u = parameter_grid(256);
  const UnitLoop one = ev1_section(1.0, 256);
  EXPECT_EQ(one(0), Complex(1.0));
  const UnitLoop north = ev1_section(Complex(0.0, 1.0), 256);
  EXPECT_EQ(north(0), Complex(0.0, 1.0));
  for (Eigen::Index j = 0; j < 256; ++j) {
    EXPECT_LT(std::abs(one(j) - std::polar(1.0, std::sin(u(j)))), 1e-15);
    EXPECT_LT(std::abs(north(j) - Complex(0, 1) * std::polar(1.0, std::sin(u(j)))), 1e-15);
  }
  EXPECT_EQ(rotation_degree(one), 0);
  EXPECT_NEAR(image_length(one), 2.0, 1e-14);
}

TEST(CanonicalLoop, IsTheRescaledSection) {
  const Complex phi = std::polar(1.0, 2.0);
  const UnitLoop e = canonical_loop(phi, 512);
  const Eigen::VectorXd u = parameter_grid(512);
  for (Eigen::Index j = 0; j < 512; ++j)
    EXPECT_LT(std::abs(e(j) - std::polar(1.0, 2.0 + (1.0 + kPi / 2) * std::sin(u(j)))), 1e-13);
  EXPECT_NEAR(image_length(e), 2.0 + kPi, 1e-12);
  const PeriodicCurve c = canonical_curve(phi, 512);
  EXPECT_EQ(c.samples()(0), Complex(0.0));
  EXPECT_LT(closure_residual(phi_decompose(c).first, e), 1e-10);
}

TEST(RetractLoop, StartAndEnd) {
  for (const PeriodicCurve& c : random_corpus(10, 1024, 600)) {
    const UnitLoop e = tangents(c);
    const LoopRetraction r(e);
    EXPECT_LT(sup_distance(r.at(0.0).samples(), e.samples()), 1e-12);
    EXPECT_LT(sup_distance(r.at(1.0).samples(), canonical_loop(r.phi_final(), 1024).samples()), 1e-12);
  }
}

TEST(RetractLoop, CanonicalLoopIsFixed) {
  const Complex phi = std::polar(1.0, -1.1);
  const UnitLoop e = canonical_loop(phi, 1024);
  const LoopRetraction r(e);
  EXPECT_LT(std::abs(r.phi_final() - phi), 1e-12);
  for (int i = 0; i <= 16; ++i) EXPECT_LT(sup_distance(r.at(i / 16.0).samples(), e.samples()), 1e-8);
}

TEST(RetractLoop, FigureEightImageStaysLong) {
  const LoopRetraction r(tangents(figure_eight(1024)));
  for (int i = 0; i < 64; ++i) {
    const UnitLoop e_t = r.at(i / 63.0);
    const double len = std::min(kTwoPi, unwrapped_range(e_t));
    EXPECT_NEAR(image_length(e_t), len, 1e-12);
    EXPECT_GT(len, kPi + 1e-3);
  }
}

TEST(RetractCurve, FrameZeroIsTheInput) {
  const PeriodicCurve c = random_corpus(1, 1024, 77).front();
  const HomotopyPath path = retract_curve(c, 11);
  EXPECT_EQ(path.frames.front().curve.samples(), c.samples());
  EXPECT_EQ(path.frames.front().t, 0.0);
  EXPECT_EQ(path.frames.back().t, 1.0);
}

TEST(RetractCurve, CanonicalCurveIsAFixedPoint) {
  const PeriodicCurve c = canonical_curve(std::polar(1.0, 0.4), 1024);
  const HomotopyPath path = retract_curve(c, 100);
  EXPECT_LT(std::abs(path.phi_final - std::polar(1.0, 0.4)), 1e-12);
  for (const Frame& f : path.frames) EXPECT_LT(sup_distance(f.curve.samples(), c.samples()), 1e-6) << "t = " << f.t;
}

TEST(RetractCurve, FigureEightPathIsRegular) {
  const HomotopyPath path = retract_curve(figure_eight(1024), 100);
  ASSERT_EQ(path.frames.size(), 100u);
  const PathReport report = validate_path(path);
  for (const std::string& f : report.failures) ADD_FAILURE() << f;
  EXPECT_TRUE(report.ok);
  EXPECT_GT(report.worst_speed_ratio, 1e-3);
  EXPECT_LT(report.endpoint_error, 1e-6);
  EXPECT_LT(std::abs(path.phi_final - std::polar(1.0, -kPi / 4)), 1e-9);
}

TEST(RetractCurve, StagesFollowTheSchedule) {
  const HomotopyPath two = retract_curve(figure_eight(1024), 2);
  ASSERT_EQ(two.frames.size(), 2u);
  EXPECT_EQ(two.frames[0].stage, Stage::Translate);
  EXPECT_EQ(two.frames[1].stage, Stage::LoopContract);
  EXPECT_LT(sup_distance(two.frames[1].curve.samples(), canonical_curve(two.phi_final, 1024).samples()), 1e-6);

  const HomotopyPath path = retract_curve(figure_eight(1024), 11);
  for (const Frame& f : path.frames) {
    const Stage expect = f.t <= kTranslateEnd ? Stage::Translate : f.t <= kFiberEnd ? Stage::FiberRetract : Stage::LoopContract;
    EXPECT_EQ(f.stage, expect);
  }
}

TEST(RetractCurve, FinalParameterIsRotationEquivariant) {
  for (const PeriodicCurve& c : random_corpus(5, 1024, 900)) {
    const Complex base = retract_curve(c, 2).phi_final;
    for (double angle : {0.3, 2.0, -2.9}) {
      const Complex rho = std::polar(1.0, angle);
      EXPECT_LT(std::abs(retract_curve(c.rotated(rho), 2).phi_final - rho * base), 1e-6);
    }
  }
}

TEST(RetractCurve, RandomCurvesGiveValidPaths) {
  for (const PeriodicCurve& c : random_corpus(5, 1024, 1200)) {
    const PathReport report = validate_path(retract_curve(c, 40));
    for (const std::string& f : report.failures) ADD_FAILURE() << f;
  }
}

TEST(RetractCurve, Errors) {
  expect_error(ErrorKind::NonZeroDegree, [] { retract_curve(circle(256), 10); });
  expect_error(ErrorKind::OutOfRange, [] { retract_curve(figure_eight(256), 1); });
}
