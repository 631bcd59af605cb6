#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "confmap/boundary.hpp"
#include "confmap/corrector.hpp"
#include "confmap/fredholm.hpp"
#include "confmap/kernels.hpp"
#include "confmap/mapper.hpp"

namespace confmap::io {

using json = nlohmann::json;

/// Boundary spec file:
///   {"coeffs": [{"k": int, "re": float, "im": float}, ...]}
///   or {"samples": [[x, y], ...], "m": int, "n": int}
/// plus optional {"corners": [{"t0": float, "lambda": float}, ...]}.
struct BoundarySpec {
  TrigBoundary boundary;
  std::vector<AnglePoint> corners;
  std::optional<double> fit_residual;  ///< set when built from samples
  int sample_count = 0;                ///< fitted sample count, 0 for coefficient input
};

BoundarySpec parse_boundary_spec(const json& j);
json boundary_to_json(const TrigBoundary& b, std::span<const AnglePoint> corners = {},
                      std::optional<double> fit_residual = std::nullopt);

std::vector<AnglePoint> parse_corners(const json& j);

/// {"M": int, "alpha": [...], "beta": [...], "residual": float}
json solution_to_json(const FredholmSolution& s);
FredholmSolution solution_from_json(const json& j);

json report_to_json(const MapReport& r);

/// Per corner {t0, eps1, eps2, kind, theta_star, retries}.
json correction_to_json(const CornerCorrection& c);

/// Samples as JSON {"samples": [[x, y], ...]} or CSV lines "x,y".
std::vector<cplx> read_samples_file(const std::filesystem::path& path);

/// Points as CSV lines "re,im".
std::vector<cplx> read_points_csv(const std::filesystem::path& path);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// "re_zeta,im_zeta,re_f,im_f" rows.
void write_grid_csv(std::ostream& os, std::span<const cplx> zeta, std::span<const cplx> f);

/// "family,index,parameter,re_zeta,im_zeta,re_f,im_f" rows.
void write_level_lines_csv(std::ostream& os, std::span<const LevelLine> lines);

/// "kind,i,j,value" rows: kind K with (i, j) = (tau index, t index), then
/// kind P with j = -1.
void write_kernel_csv(std::ostream& os, const KernelGrid& grid);

}  // namespace confmap::io
