#include "imm0/io.hpp"

#include "imm0/error.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace imm0 {
namespace {

using nlohmann::json;

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

Complex read_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::Parse, where + ": expected a [number, number] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::VectorXcd read_pairs(const json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "'" + field + "' must be an array of pairs");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = read_pair(j[i], field + "[" + std::to_string(i) + "]");
  return out;
}

json pairs(const Eigen::VectorXcd& z) {
  json arr = json::array();
  for (Eigen::Index j = 0; j < z.size(); ++j) arr.push_back(complex_pair(z(j)));
  return arr;
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(err.byte == 0 ? 0 : err.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                      err.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CurveDocument parse_curve_document(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorKind::Parse, "curve document must be a JSON object");
  CurveDocument doc;
  const bool has_samples = j.contains("samples");
  const bool has_fourier = j.contains("fourier");
  if (has_samples == has_fourier)
    throw Error(ErrorKind::Parse, "curve document needs exactly one of 'samples' or 'fourier'");
  if (has_samples) {
    doc.samples = read_pairs(j["samples"], "samples");
  } else {
    doc.fourier = read_pairs(j["fourier"], "fourier");
    if (!j.contains("n_min") || !j["n_min"].is_number_integer())
      throw Error(ErrorKind::Parse, "'fourier' documents need an integer 'n_min'");
    doc.n_min = j["n_min"].get<int>();
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw Error(ErrorKind::Parse, "'name' must be a string");
    doc.name = j["name"].get<std::string>();
  }
  return doc;
}

json to_json(const CurveDocument& doc) {
  json j = json::object();
  if (doc.name) j["name"] = *doc.name;
  if (doc.samples) j["samples"] = pairs(*doc.samples);
  if (doc.fourier) {
    j["fourier"] = pairs(*doc.fourier);
    j["n_min"] = doc.n_min;
  }
  return j;
}

CurveDocument to_document(const PeriodicCurve& c, std::optional<std::string> name) {
  CurveDocument doc;
  doc.samples = c.samples();
  doc.name = std::move(name);
  return doc;
}

PeriodicCurve to_curve(const CurveDocument& doc, std::optional<Eigen::Index> samples, const Tolerances& tol) {
  if (samples && (!is_power_of_two(*samples) || *samples < kMinDocumentSamples))
    throw Error(ErrorKind::BadSampleCount,
                "requested " + std::to_string(*samples) + " samples; need a power of two >= 64");
  if (doc.fourier) return PeriodicCurve::from_fourier(*doc.fourier, doc.n_min, samples.value_or(kDefaultSamples), tol);
  const Eigen::VectorXcd& raw = *doc.samples;
  if (samples) return PeriodicCurve::from_samples(resample(raw, *samples), tol);
  if (!is_power_of_two(raw.size()) || raw.size() < kMinDocumentSamples)
    throw Error(ErrorKind::BadSampleCount, "document has " + std::to_string(raw.size()) +
                                               " samples; need a power of two >= 64 (use --samples to resample)");
  return PeriodicCurve::from_samples(raw, tol);
}

json frame_json(const Frame& frame) {
  return json{{"t", frame.t},
              {"stage", std::string(to_string(frame.stage))},
              {"samples", pairs(frame.curve.samples())},
              {"min_speed", frame.min_speed},
              {"closure_residual", frame.closure_residual}};
}

json to_json(const HomotopyPath& path) {
  json frames = json::array();
  for (const Frame& f : path.frames) frames.push_back(frame_json(f));
  return json{{"phi_final", complex_pair(path.phi_final)}, {"frames", std::move(frames)}};
}

PathDocument parse_path_document(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("phi_final") || !j.contains("frames") || !j["frames"].is_array())
    throw Error(ErrorKind::Parse, "path document needs 'phi_final' and a 'frames' array");
  PathDocument doc;
  doc.phi_final = read_pair(j["phi_final"], "phi_final");
  for (std::size_t i = 0; i < j["frames"].size(); ++i) {
    const json& f = j["frames"][i];
    const std::string where = "frames[" + std::to_string(i) + "]";
    if (!f.is_object() || !f.contains("t") || !f["t"].is_number() || !f.contains("stage") || !f["stage"].is_string() ||
        !f.contains("samples"))
      throw Error(ErrorKind::Parse, where + ": needs 't', 'stage' and 'samples'");
    doc.frames.push_back(
        {f["t"].get<double>(), stage_from_string(f["stage"].get<std::string>()), read_pairs(f["samples"], where)});
  }
  return doc;
}

json to_json(const RapidSequence& b) { return pairs(b.entries()); }

ViewBox common_view_box(const std::vector<Frame>& frames) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Frame& f : frames) {
    const Eigen::VectorXcd& s = f.curve.samples();
    xmin = std::min(xmin, s.real().minCoeff());
    xmax = std::max(xmax, s.real().maxCoeff());
    ymin = std::min(ymin, -s.imag().maxCoeff());
    ymax = std::max(ymax, -s.imag().minCoeff());
  }
  const double w = std::max(xmax - xmin, 1e-12), h = std::max(ymax - ymin, 1e-12);
  return {xmin - 0.05 * w, ymin - 0.05 * h, 1.1 * w, 1.1 * h};
}

std::string render_svg(const PeriodicCurve& c, const ViewBox& box) {
  std::ostringstream os;
  os << std::setprecision(8);
  const double stroke = 0.004 * std::max(box.width, box.height);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << box.x << ' ' << box.y << ' ' << box.width << ' '
     << box.height << "\">\n";
  os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\" points=\"";
  const Eigen::VectorXcd& s = c.samples();
  for (Eigen::Index j = 0; j < s.size(); ++j) os << (j ? " " : "") << s(j).real() << ',' << -s(j).imag();
  os << "\"/>\n</svg>\n";
  return os.str();
}

std::string render_csv(const PeriodicCurve& c) {
  std::ostringstream os;
  os << std::setprecision(17) << "x,y\n";
  const Eigen::VectorXcd& s = c.samples();
  for (Eigen::Index j = 0; j < s.size(); ++j) os << s(j).real() << ',' << s(j).imag() << '\n';
  return os.str();
}

}  // namespace imm0
