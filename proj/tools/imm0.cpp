#include "imm0/commands.hpp"
#include "imm0/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Analyze immersed plane curves and retract degree-0 immersions onto the canonical circle family"};
  app.require_subcommand(1);

  imm0::AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Report degree, average argument, lift variation and image gap");
  analyze_cmd->add_option("file", analyze.input, "Curve document (JSON)")->required();
  analyze_cmd->add_flag("--json", analyze.json, "Print the report as JSON");
  analyze_cmd->add_option("--resample", analyze.resample, "Spectrally resample to N points first");

  imm0::RetractArgs retract;
  auto* retract_cmd = app.add_subcommand("retract", "Write a regular homotopy to the canonical curve");
  retract_cmd->add_option("file", retract.input, "Curve document (JSON)")->required();
  retract_cmd->add_option("--frames", retract.frames, "Number of frames K (>= 2)")->required();
  retract_cmd->add_option("--samples", retract.samples, "Sample count N (power of two)");
  retract_cmd->add_option("--modes", retract.modes, "Fourier modes M of the loop contraction")->capture_default_str();
  retract_cmd->add_option("--out", retract.out_dir, "Output directory")->capture_default_str();
  retract_cmd->add_option("--format", retract.format, "Frame format")
      ->check(CLI::IsMember({"svg", "json", "csv"}))
      ->capture_default_str();
  retract_cmd->add_flag("--arclength", retract.arclength, "Reparametrize by arc length before retracting");

  std::string path_file;
  auto* validate_cmd = app.add_subcommand("validate", "Re-check the invariants of a path.json");
  validate_cmd->add_option("path", path_file, "Path file written by retract")->required();

  imm0::DemoArgs demo;
  auto* demo_cmd = app.add_subcommand("demo", "Print a demo curve document");
  demo_cmd->add_option("kind", demo.kind, "figure-eight, canonical or random")
      ->required()
      ->check(CLI::IsMember({"figure-eight", "canonical", "random"}));
  demo_cmd->add_option("--phi", demo.phi_degrees, "Canonical parameter in degrees");
  demo_cmd->add_option("--seed", demo.seed, "Seed for the random curve");
  demo_cmd->add_option("--samples", demo.samples, "Sample count N")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const imm0::Tolerances tol = imm0::Tolerances::from_env();
    if (*analyze_cmd) return imm0::cmd_analyze(analyze, tol, std::cout, std::cerr);
    if (*retract_cmd) return imm0::cmd_retract(retract, tol, std::cout, std::cerr);
    if (*validate_cmd) return imm0::cmd_validate(path_file, tol, std::cout, std::cerr);
    if (*demo_cmd) return imm0::cmd_demo(demo, std::cout, std::cerr);
  } catch (const imm0::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return imm0::exit_code(e.kind());
  }
  return 0;
}
