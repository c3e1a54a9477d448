#pragma once

// Command implementations behind the imm0 executable. Each returns the
// process exit code: 0 ok, 2 parse, 3 invariant, 4 numeric.

#include "imm0/curve.hpp"
#include "imm0/tolerances.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace imm0 {

/// Degree, average argument, length, lift variation and image gap of a curve.
nlohmann::json analyze_curve(const PeriodicCurve& c, const Tolerances& tol = {});

struct AnalyzeArgs {
  std::string input;
  bool json = false;
  std::optional<Eigen::Index> resample;
};

struct RetractArgs {
  std::string input;
  int frames = 100;
  std::optional<Eigen::Index> samples;
  Eigen::Index modes = 64;
  std::string out_dir = "retract_out";
  std::string format = "svg";
  bool arclength = false;
};

struct DemoArgs {
  std::string kind;
  double phi_degrees = 0.0;
  std::uint64_t seed = 0;
  Eigen::Index samples = 1024;
};

int cmd_analyze(const AnalyzeArgs& args, const Tolerances& tol, std::ostream& out, std::ostream& err);
int cmd_retract(const RetractArgs& args, const Tolerances& tol, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& path_file, const Tolerances& tol, std::ostream& out, std::ostream& err);
int cmd_demo(const DemoArgs& args, std::ostream& out, std::ostream& err);

}  // namespace imm0
