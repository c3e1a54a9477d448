#include "imm0/retraction.hpp"

#include "imm0/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace imm0 {
namespace {

constexpr int kNewtonMaxIterations = 100;
constexpr int kMaxHalvings = 10;
constexpr double kVarFloor = 1e-8;

Eigen::Vector2d as_vec(Complex z) { return {z.real(), z.imag()}; }

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

void require_long_image(const UnitLoop& e, const Tolerances& tol) {
  const ArgumentLift a = argument_lift(e);
  if (a.degree != 0) return;  // a loop of nonzero degree covers the whole circle
  const double len = std::min(kTwoPi, variation_average(a).var);
  if (!(len > kPi + tol.hull_margin)) {
    throw Error(ErrorKind::HullDegenerate,
                "tangent image has length " + std::to_string(len) + ", not more than pi; no closed speed exists");
  }
}

// log mean(exp(z)) with the max shifted out, plus the softmax weights.
double log_mean_exp(const Eigen::VectorXd& z, Eigen::VectorXd& weights) {
  const double top = z.maxCoeff();
  weights = (z.array() - top).exp().matrix();
  const double total = weights.sum();
  weights /= total;
  return top + std::log(total / static_cast<double>(z.size()));
}

Eigen::VectorXd exponent(const UnitLoop& e, const Eigen::VectorXd& log_weight, const Eigen::Vector2d& lambda) {
  const Eigen::VectorXcd& s = e.samples();
  return log_weight - lambda.x() * s.real() - lambda.y() * s.imag();
}

std::string stage_context(Stage stage, double t) {
  std::ostringstream os;
  os << "stage " << to_string(stage) << " at t=" << t;
  return os.str();
}

}  // namespace

std::pair<SpeedFunction, CanonicalSection> weighted_canonical_speed(const UnitLoop& e, const Eigen::VectorXd& weight,
                                                                    const Tolerances& tol) {
  if (weight.size() != e.size()) throw Error(ErrorKind::BadSampleCount, "weight and loop sizes differ");
  if (!(weight.minCoeff() > 0.0)) throw Error(ErrorKind::OutOfRange, "section weight must be positive");
  require_long_image(e, tol);

  // Minimize G = log F, which has the same minimizer; its gradient is the
  // relative closure defect -sum(p e) for the normalized speed p.
  const Eigen::VectorXd log_weight = weight.array().log().matrix();
  const Eigen::MatrixXd dirs = (Eigen::MatrixXd(2, e.size()) << e.samples().real().transpose(),
                                e.samples().imag().transpose())
                                   .finished();
  CanonicalSection section;
  Eigen::VectorXd p;
  double g = log_mean_exp(exponent(e, log_weight, section.lambda), p);
  for (;; ++section.iterations) {
    const Eigen::Vector2d m = dirs * p;
    if (m.norm() < tol.newton_gradient) break;
    if (section.iterations >= kNewtonMaxIterations)
      throw Error(ErrorKind::NewtonDiverged, "closure defect " + std::to_string(m.norm()) + " after " +
                                                 std::to_string(kNewtonMaxIterations) + " Newton steps");
    const Eigen::Matrix2d hessian = dirs * p.asDiagonal() * dirs.transpose() - m * m.transpose();
    const Eigen::Vector2d step = hessian.ldlt().solve(m);
    const double slope = -m.dot(step);
    // Armijo on G, or a drop in the closure defect once G is flat to rounding.
    double s = 1.0;
    Eigen::VectorXd p_next;
    double g_next = 0.0;
    bool accepted = false;
    for (int k = 0; k < 60 && !accepted; ++k) {
      g_next = log_mean_exp(exponent(e, log_weight, section.lambda + s * step), p_next);
      accepted = g_next <= g + 1e-4 * s * slope || (dirs * p_next).norm() < 0.5 * m.norm();
      if (!accepted) s *= 0.5;
    }
    if (!accepted)
      throw Error(ErrorKind::NewtonDiverged, "line search stalled with closure defect " + std::to_string(m.norm()));
    section.lambda += s * step;
    g = g_next;
    p = std::move(p_next);
  }
  Eigen::VectorXd v = exponent(e, log_weight, section.lambda).array().exp().matrix();
  return {SpeedFunction::from_samples(std::move(v)), section};
}

std::pair<SpeedFunction, CanonicalSection> canonical_speed(const UnitLoop& e, const Tolerances& tol) {
  return weighted_canonical_speed(e, Eigen::VectorXd::Ones(e.size()), tol);
}

std::pair<SpeedFunction, TriangleSection> triangle_section(const UnitLoop& e, const Tolerances& tol) {
  require_long_image(e, tol);
  const Eigen::Index n = e.size();

  std::array<Eigen::Index, kTriangleCandidates> cand{};
  for (int k = 0; k < kTriangleCandidates; ++k)
    cand[k] = static_cast<Eigen::Index>(std::llround(static_cast<double>(k) * n / kTriangleCandidates)) % n;

  TriangleSection section;
  double best = -1.0;
  for (int i = 0; i < kTriangleCandidates; ++i) {
    for (int j = i + 1; j < kTriangleCandidates; ++j) {
      for (int k = j + 1; k < kTriangleCandidates; ++k) {
        const Complex a = e(cand[i]), b = e(cand[j]), c = e(cand[k]);
        const double d1 = cross(a, b), d2 = cross(b, c), d3 = cross(c, a);
        const bool inside = (d1 > 1e-12 && d2 > 1e-12 && d3 > 1e-12) || (d1 < -1e-12 && d2 < -1e-12 && d3 < -1e-12);
        if (!inside) continue;
        const double area = 0.5 * std::abs(cross(b - a, c - a));
        if (area > best + 1e-12) {
          best = area;
          section.indices = {cand[i], cand[j], cand[k]};
        }
      }
    }
  }
  if (best < 0.0) throw Error(ErrorKind::HullDegenerate, "no candidate triangle of tangents contains the origin");
  const Eigen::VectorXd grid = parameter_grid(n);
  for (int i = 0; i < 3; ++i) section.thetas[i] = grid(section.indices[i]);

  const double dtheta = kTwoPi / static_cast<double>(n);
  double w = kPi / kTriangleCandidates;
  for (section.halvings = 0; section.halvings <= kMaxHalvings; ++section.halvings, w *= 0.5) {
    std::array<Eigen::VectorXd, 3> bumps;
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd b(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        double d = std::remainder(grid(j) - section.thetas[i], kTwoPi) / w;
        b(j) = (std::abs(d) < 1.0 ? std::exp(-1.0 / (1.0 - d * d)) : 0.0) + kBumpFloor;
      }
      bumps[i] = b / (b.sum() * dtheta);
      section.moments[i] = periodic_integral(bumps[i].cast<Complex>().cwiseProduct(e.samples()));
    }
    Eigen::Matrix2d lhs;
    lhs << as_vec(section.moments[0]), as_vec(section.moments[1]);
    const Eigen::Vector2d coeff = lhs.colPivHouseholderQr().solve(-as_vec(section.moments[2]));
    if (coeff.x() > 0.0 && coeff.y() > 0.0 && coeff.allFinite()) {
      section.weights = {coeff.x(), coeff.y(), 1.0};
      section.half_width = w;
      Eigen::VectorXd v = coeff.x() * bumps[0] + coeff.y() * bumps[1] + bumps[2];
      return {SpeedFunction::from_samples(std::move(v)), section};
    }
  }
  throw Error(ErrorKind::NoPositiveSolution,
              "no positive bump weights after " + std::to_string(kMaxHalvings) + " width halvings");
}

SpeedFunction fiber_retract(const SpeedFunction& from, const SpeedFunction& to, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfRange, "retraction time outside [0, 1]");
  if (t == 0.0) return from;
  if (t == 1.0) return to;
  return SpeedFunction::from_samples((1.0 - t) * from.samples() + t * to.samples());
}

SpeedFunction fiber_retract(const SpeedFunction& v, const UnitLoop& e, double t, const Tolerances& tol) {
  return fiber_retract(v, canonical_speed(e, tol).first, t);
}

Eigen::VectorXd g_transform(const Eigen::VectorXd& lift, GDirection direction) {
  const VariationAverage va = variation_average(lift);
  double scale = 0.0;
  if (direction == GDirection::Forward) {
    if (!(va.var >= kVarFloor)) throw Error(ErrorKind::VarTooSmall, "g needs a nonconstant lift");
    scale = (va.var + kPi) / va.var;
  } else {
    if (!(va.var > kPi + kVarFloor))
      throw Error(ErrorKind::VarTooSmall, "inverse g needs Var > pi, got " + std::to_string(va.var));
    scale = (va.var - kPi) / va.var;
  }
  return ((lift.array() - va.ave) * scale + va.ave).matrix();
}

UnitLoop ev1_section(Complex phi, Eigen::Index samples) {
  const Eigen::VectorXd u = parameter_grid(samples);
  Eigen::VectorXcd e(samples);
  for (Eigen::Index j = 0; j < samples; ++j) e(j) = phi * std::polar(1.0, std::sin(u(j)));
  return UnitLoop::from_samples(e);
}

UnitLoop canonical_loop(Complex phi, Eigen::Index samples) {
  return UnitLoop::from_angles(g_transform(argument_lift(ev1_section(phi, samples)).samples, GDirection::Forward));
}

PeriodicCurve canonical_curve(Complex phi, Eigen::Index samples, const Tolerances& tol) {
  const UnitLoop e = canonical_loop(phi, samples);
  return phi_reconstruct(canonical_speed(e, tol).first, e, tol);
}

LoopRetraction::LoopRetraction(const UnitLoop& e, Eigen::Index modes, const Tolerances& tol)
    : LoopRetraction(pull_down(e, tol), modes) {}

LoopRetraction::LoopRetraction(const Eigen::VectorXd& down, Eigen::Index modes)
    : samples_(down.size()),
      base_value_(down(0)),
      based_(BasedLoopFunction::from_samples((down.array() - down(0)).matrix())),
      sequence_(loop_to_sequence(based_, modes)),
      tail_(based_.samples() - sequence_to_loop(sequence_, samples_).samples()) {}

Eigen::VectorXd LoopRetraction::pull_down(const UnitLoop& e, const Tolerances& tol) {
  const ArgumentLift a = argument_lift(e);
  if (a.degree != 0) throw Error(ErrorKind::NonZeroDegree, "loop retraction needs degree 0");
  if (!(variation_average(a).var > kPi + tol.hull_margin))
    throw Error(ErrorKind::HullDegenerate, "tangent lift varies by " + std::to_string(variation_average(a).var) +
                                               ", not more than pi");
  return g_transform(a.samples, GDirection::Inverse);
}

BasedLoopFunction LoopRetraction::based_loop_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfRange, "loop retraction time outside [0, 1]");
  if (t == 0.0) return based_;
  Eigen::VectorXd f = sequence_to_loop(contract_sequence(sequence_, t), samples_).samples();
  // The part of f beyond the mode cutoff fades out during the normalization quarter.
  const double fade = std::max(0.0, 1.0 - 4.0 * t);
  if (fade > 0.0) f += fade * tail_;
  f(0) = 0.0;
  return BasedLoopFunction::from_samples(std::move(f));
}

UnitLoop LoopRetraction::at(double t) const {
  const Eigen::VectorXd down = based_loop_at(t).samples().array() + base_value_;
  return UnitLoop::from_angles(g_transform(down, GDirection::Forward));
}

UnitLoop retract_loop(const UnitLoop& e, double t, Eigen::Index modes, const Tolerances& tol) {
  return LoopRetraction(e, modes, tol).at(t);
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Translate: return "Translate";
    case Stage::FiberRetract: return "FiberRetract";
    case Stage::LoopContract: return "LoopContract";
  }
  return "Unknown";
}

Stage stage_from_string(std::string_view name) {
  if (name == "Translate") return Stage::Translate;
  if (name == "FiberRetract") return Stage::FiberRetract;
  if (name == "LoopContract") return Stage::LoopContract;
  throw Error(ErrorKind::Parse, "unknown stage '" + std::string(name) + "'");
}

HomotopyPath retract_curve(const PeriodicCurve& c, int n_frames, const RetractOptions& options) {
  const Tolerances& tol = options.tol;
  if (n_frames < 2) throw Error(ErrorKind::OutOfRange, "a path needs at least two frames");
  const int degree = rotation_degree(c, tol);
  if (degree != 0)
    throw Error(ErrorKind::NonZeroDegree, "retraction needs a degree-0 immersion, got degree " + std::to_string(degree));

  const Complex offset = c.samples()(0);
  const auto [v, e] = phi_decompose(c, tol);
  const SpeedFunction v_canonical = canonical_speed(e, tol).first;
  const LoopRetraction loop(e, options.modes, tol);

  HomotopyPath path;
  path.phi_final = loop.phi_final();
  path.frames.reserve(static_cast<std::size_t>(n_frames));
  for (int k = 0; k < n_frames; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n_frames - 1);
    const Stage stage = t <= kTranslateEnd ? Stage::Translate : t <= kFiberEnd ? Stage::FiberRetract : Stage::LoopContract;
    try {
      PeriodicCurve curve = [&] {
        switch (stage) {
          case Stage::Translate:
            return k == 0 ? c : c.translated(-(t / kTranslateEnd) * offset);
          case Stage::FiberRetract: {
            const double s = (t - kTranslateEnd) / (kFiberEnd - kTranslateEnd);
            return phi_reconstruct(fiber_retract(v, v_canonical, s), e, tol);
          }
          case Stage::LoopContract:
          default: {
            const double s = (t - kFiberEnd) / (1.0 - kFiberEnd);
            const UnitLoop e_s = loop.at(std::min(1.0, s));
            return phi_reconstruct(canonical_speed(e_s, tol).first, e_s, tol);
          }
        }
      }();
      const auto [vf, ef] = phi_decompose(curve, tol);
      if (rotation_degree(ef, tol) != 0) throw Error(ErrorKind::InvariantBreach, "frame degree is not 0");
      const double residual = closure_residual(vf, ef);
      path.frames.push_back(Frame{t, stage, std::move(curve), vf.samples().minCoeff(), residual});
    } catch (const Error& err) {
      throw Error(err.kind(), stage_context(stage, t) + ": " + err.what());
    }
  }
  return path;
}

PathReport validate_frames(Complex phi_final, const std::vector<FrameSamples>& frames, const Tolerances& tol) {
  PathReport report;
  auto fail = [&](std::size_t i, const std::string& what) {
    report.ok = false;
    std::ostringstream os;
    os << "frame " << i;
    if (i < frames.size()) os << " (t=" << frames[i].t << ", " << to_string(frames[i].stage) << ")";
    os << ": " << what;
    report.failures.push_back(os.str());
  };
  if (frames.size() < 2) {
    report.ok = false;
    report.failures.emplace_back("InvariantBreach: path has fewer than two frames");
    return report;
  }
  if (frames.front().t != 0.0) fail(0, "InvariantBreach: first frame is not at t = 0");
  if (frames.back().t != 1.0) fail(frames.size() - 1, "InvariantBreach: last frame is not at t = 1");
  if (std::abs(std::abs(phi_final) - 1.0) > 1e-12) fail(frames.size() - 1, "InvariantBreach: phi_final is not a unit complex");

  report.worst_speed_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i > 0 && !(frames[i].t > frames[i - 1].t)) fail(i, "InvariantBreach: time stamps are not increasing");
    try {
      const PeriodicCurve curve = PeriodicCurve::from_samples(frames[i].samples, tol);
      const auto [v, e] = phi_decompose(curve, tol);
      const double ratio = v.samples().minCoeff() / v.samples().mean();
      if (ratio < report.worst_speed_ratio) {
        report.worst_speed_ratio = ratio;
        report.worst_speed_frame = static_cast<Eigen::Index>(i);
      }
      if (!(ratio > tol.speed_floor))
        fail(i, "NotImmersed: min speed is " + std::to_string(ratio) + " of the mean speed");
      const double closure = closure_residual(v, e) / curve.length();
      if (closure > report.worst_closure_ratio) {
        report.worst_closure_ratio = closure;
        report.worst_closure_frame = static_cast<Eigen::Index>(i);
      }
      if (!(closure < tol.closure))
        fail(i, "NotClosed: closure residual is " + std::to_string(closure) + " of the length");
      const int degree = rotation_degree(e, tol);
      if (degree != 0) fail(i, "NonZeroDegree: frame has degree " + std::to_string(degree));
    } catch (const Error& err) {
      fail(i, err.what());
    }
  }

  try {
    const FrameSamples& last = frames.back();
    const Eigen::VectorXcd target = canonical_curve(phi_final, last.samples.size(), tol).samples();
    report.endpoint_error = (last.samples - target).cwiseAbs().maxCoeff();
    if (!(report.endpoint_error < tol.endpoint))
      fail(frames.size() - 1, "InvariantBreach: endpoint is " + std::to_string(report.endpoint_error) +
                                  " away from the canonical curve of phi_final");
  } catch (const Error& err) {
    fail(frames.size() - 1, std::string("endpoint: ") + err.what());
  }
  return report;
}

PathReport validate_path(const HomotopyPath& path, const Tolerances& tol) {
  std::vector<FrameSamples> frames;
  frames.reserve(path.frames.size());
  for (const Frame& f : path.frames) frames.push_back({f.t, f.stage, f.curve.samples()});
  return validate_frames(path.phi_final, frames, tol);
}

}  // namespace imm0
