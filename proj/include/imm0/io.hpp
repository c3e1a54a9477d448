#pragma once

// Text formats: curve documents, homotopy path files, per-frame renderings.

#include "imm0/curve.hpp"
#include "imm0/retraction.hpp"
#include "imm0/sequence.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace imm0 {

/// {"samples": [[x, y], ...]} or {"fourier": [[re, im], ...], "n_min": k}, optional "name".
struct CurveDocument {
  std::optional<Eigen::VectorXcd> samples;
  std::optional<Eigen::VectorXcd> fourier;
  int n_min = 0;
  std::optional<std::string> name;
};

inline constexpr Eigen::Index kDefaultSamples = 1024;
inline constexpr Eigen::Index kMinDocumentSamples = 64;

/// Parse errors carry the line and column of the offending character.
nlohmann::json parse_json(const std::string& text);
std::string read_text_file(const std::string& path);

CurveDocument parse_curve_document(const std::string& text);
nlohmann::json to_json(const CurveDocument& doc);
CurveDocument to_document(const PeriodicCurve& c, std::optional<std::string> name = std::nullopt);

/// Samples the document on `samples` points: Fourier documents are evaluated,
/// sample documents are spectrally resampled when `samples` is given.
PeriodicCurve to_curve(const CurveDocument& doc, std::optional<Eigen::Index> samples = std::nullopt,
                       const Tolerances& tol = {});

/// {"phi_final": [re, im], "frames": [{"t", "stage", "samples", "min_speed", "closure_residual"}, ...]}.
nlohmann::json to_json(const HomotopyPath& path);

struct PathDocument {
  Complex phi_final{1.0, 0.0};
  std::vector<FrameSamples> frames;
};

PathDocument parse_path_document(const std::string& text);

/// Debug dump of a sequence: [[re, im], ...].
nlohmann::json to_json(const RapidSequence& b);

struct ViewBox {
  double x = 0.0, y = 0.0, width = 1.0, height = 1.0;
};

/// Bounding box of every frame (y pointing up) with a 5% margin.
ViewBox common_view_box(const std::vector<Frame>& frames);

std::string render_svg(const PeriodicCurve& c, const ViewBox& box);
std::string render_csv(const PeriodicCurve& c);
nlohmann::json frame_json(const Frame& frame);

}  // namespace imm0
