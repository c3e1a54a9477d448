#include "imm0/commands.hpp"

#include "imm0/error.hpp"
#include "imm0/gallery.hpp"
#include "imm0/io.hpp"
#include "imm0/retraction.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace imm0 {
namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path.string() + "'");
  out << text;
}

std::string frame_name(std::size_t index, const std::string& ext) {
  std::ostringstream os;
  os << "frame_" << std::setw(4) << std::setfill('0') << index << '.' << ext;
  return os.str();
}

int report_error(const Error& err, std::ostream& errs) {
  errs << "error: " << err.what() << '\n';
  return exit_code(err.kind());
}

}  // namespace

json analyze_curve(const PeriodicCurve& c, const Tolerances& tol) {
  json report;
  const int degree = rotation_degree(c, tol);
  report["degree"] = degree;
  report["samples"] = c.size();
  report["length"] = c.length();
  if (degree != 0) {
    report["alpha"] = nullptr;
    report["alpha_reason"] = std::string(to_string(ErrorKind::NonZeroDegree));
    report["var_lift"] = nullptr;
    report["ave_lift"] = nullptr;
    report["image_length"] = nullptr;
    report["image_gap"] = nullptr;
    return report;
  }
  const Complex alpha = average_argument(c, tol);
  const UnitLoop e = phi_decompose(c, tol).second;
  const VariationAverage va = variation_average(argument_lift(e));
  const ImageGap gap = image_gap(e);
  report["alpha"] = json::array({alpha.real(), alpha.imag()});
  report["var_lift"] = va.var;
  report["ave_lift"] = va.ave;
  report["image_length"] = image_length(e);
  report["image_gap"] = json{{"length", gap.length}, {"center", json::array({gap.center.real(), gap.center.imag()})}};
  return report;
}

int cmd_analyze(const AnalyzeArgs& args, const Tolerances& tol, std::ostream& out, std::ostream& err) {
  try {
    const CurveDocument doc = parse_curve_document(read_text_file(args.input));
    const json report = analyze_curve(to_curve(doc, args.resample, tol), tol);
    if (args.json) {
      out << report.dump(2) << '\n';
      return 0;
    }
    out << "degree:        " << report["degree"] << '\n'
        << "length:        " << report["length"] << '\n';
    if (report["alpha"].is_null()) {
      out << "alpha:         undefined (" << report["alpha_reason"].get<std::string>() << ")\n";
    } else {
      out << "alpha:         " << report["alpha"] << '\n'
          << "var_lift:      " << report["var_lift"] << '\n'
          << "image_length:  " << report["image_length"] << '\n'
          << "image_gap:     length " << report["image_gap"]["length"] << ", center "
          << report["image_gap"]["center"] << '\n';
    }
    return 0;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_retract(const RetractArgs& args, const Tolerances& tol, std::ostream& out, std::ostream& err) {
  try {
    if (args.format != "svg" && args.format != "json" && args.format != "csv")
      throw Error(ErrorKind::Parse, "unknown format '" + args.format + "' (svg, json or csv)");
    const CurveDocument doc = parse_curve_document(read_text_file(args.input));
    PeriodicCurve c = to_curve(doc, args.samples, tol);
    if (args.arclength) c = arclength_reparametrize(c, tol);
    if (4 * args.modes >= c.size())
      throw Error(ErrorKind::BadSampleCount, "--modes " + std::to_string(args.modes) + " needs more than " +
                                                 std::to_string(4 * args.modes) + " samples");

    const HomotopyPath path = retract_curve(c, args.frames, RetractOptions{args.modes, tol});

    const std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "path.json", to_json(path).dump() + "\n");
    const ViewBox box = common_view_box(path.frames);
    std::ostringstream index;
    for (std::size_t i = 0; i < path.frames.size(); ++i) {
      const Frame& f = path.frames[i];
      const std::string name = frame_name(i, args.format);
      if (args.format == "svg") write_file(dir / name, render_svg(f.curve, box));
      if (args.format == "csv") write_file(dir / name, render_csv(f.curve));
      if (args.format == "json") write_file(dir / name, frame_json(f).dump() + "\n");
      index << name << ' ' << std::setprecision(17) << f.t << ' ' << to_string(f.stage) << '\n';
    }
    write_file(dir / "index.txt", index.str());

    out << std::setprecision(17) << "phi_final: [" << path.phi_final.real() << ", " << path.phi_final.imag() << "]\n";
    const PathReport report = validate_path(path, tol);
    for (const std::string& f : report.failures) err << "invariant: " << f << '\n';
    return report.ok ? 0 : exit_code(ErrorKind::InvariantBreach);
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_validate(const std::string& path_file, const Tolerances& tol, std::ostream& out, std::ostream& err) {
  try {
    const PathDocument doc = parse_path_document(read_text_file(path_file));
    const PathReport report = validate_frames(doc.phi_final, doc.frames, tol);
    out << std::setprecision(6) << "frames:                 " << doc.frames.size() << '\n'
        << "worst speed ratio:      " << report.worst_speed_ratio << " (frame " << report.worst_speed_frame << ")\n"
        << "worst closure ratio:    " << report.worst_closure_ratio << " (frame " << report.worst_closure_frame
        << ")\n"
        << "endpoint error:         " << report.endpoint_error << '\n'
        << "result:                 " << (report.ok ? "pass" : "FAIL") << '\n';
    for (const std::string& f : report.failures) err << "invariant: " << f << '\n';
    return report.ok ? 0 : exit_code(ErrorKind::InvariantBreach);
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_demo(const DemoArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (!is_power_of_two(args.samples) || args.samples < kMinDocumentSamples)
      throw Error(ErrorKind::BadSampleCount, "--samples must be a power of two >= 64");
    std::optional<PeriodicCurve> c;
    if (args.kind == "figure-eight") {
      c = figure_eight(args.samples);
    } else if (args.kind == "canonical") {
      c = canonical_curve(std::polar(1.0, args.phi_degrees * kPi / 180.0), args.samples);
    } else if (args.kind == "random") {
      c = random_immersion(args.seed, args.samples);
    } else {
      throw Error(ErrorKind::Parse, "unknown demo kind '" + args.kind + "' (figure-eight, canonical, random)");
    }
    out << to_json(to_document(*c, args.kind)).dump() << '\n';
    return 0;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

}  // namespace imm0
