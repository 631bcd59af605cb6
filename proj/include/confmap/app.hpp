#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confmap/corrector.hpp"
#include "confmap/fredholm.hpp"
#include "confmap/io.hpp"
#include "confmap/mapper.hpp"

namespace confmap::app {

struct CornerRequest {
  AnglePoint point;
  std::optional<SplineKind> kind;  ///< falls back to RunConfig::spline
};

struct GridSpec {
  std::vector<double> radii{0.25, 0.5, 0.75, 0.9};
  int angles = 64;
  std::filesystem::path points_file;  ///< CSV "re,im"; overrides the polar grid
};

struct LevelSpec {
  std::vector<double> radii{0.25, 0.5, 0.75, 0.99};
  int rays = 16;
  int samples = 512;
};

/// Run configuration: a JSON file whose fields can be overridden by flags.
struct RunConfig {
  std::optional<io::BoundarySpec> boundary;
  int M = 64;
  int N = 1024;
  MapOptions map;
  bool auto_corners = true;
  std::vector<CornerRequest> corners;
  SplineKind spline = SplineKind::Cubic;
  double slope_floor = 0.05;
  double corner_threshold = 0.2;
  bool correct = true;
  double f0_threshold = 1e-3;
  std::filesystem::path out_dir = "out";
  GridSpec grid;
  LevelSpec levels;
  bool dump_kernel = false;
};

/// Relative paths inside the config resolve against base_dir.
RunConfig parse_config(const io::json& j, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Throws Config unless sizes are positive, M <= N/4 and a boundary is set.
void validate(const RunConfig& c);

struct ConfigOverrides {
  std::optional<int> M, N, Nq, Nq_spline;
  std::optional<std::string> spline;
  std::optional<double> slope_floor, delta_rim;
  std::optional<std::filesystem::path> out_dir;
  bool no_correct = false;
  bool dump_kernel = false;
};

void apply_overrides(RunConfig& c, const ConfigOverrides& o);

struct CornerOutcome {
  AnglePoint corner;
  SplineKind kind = SplineKind::Cubic;
  std::optional<CornerCorrection> correction;
  std::string status;  ///< "corrected", "no fold", "obtuse", "correction disabled"
};

struct Pipeline {
  std::shared_ptr<const RawCorrespondence> raw;
  std::vector<CornerOutcome> corners;
  std::shared_ptr<const BoundaryCorrespondence> correspondence;
  MonotonicityReport monotonicity;
};

/// Corners to consider: explicit requests, or detect_corners at the
/// configured threshold.
std::vector<CornerRequest> resolve_corners(const RunConfig& c);

/// Raw correspondence, per-corner correction and the monotonicity check.
Pipeline build_pipeline(const RunConfig& c, FredholmSolution solution);

io::json corrections_to_json(const Pipeline& p);

/// Subcommands. Each returns the process exit code (0 ok, 2 config,
/// 3 numerical, 4 invariant) and reports errors on `err`.
int cmd_fit_boundary(const std::filesystem::path& samples, int m, int n,
                     const std::filesystem::path& out, std::ostream& log, std::ostream& err);
int cmd_solve(const RunConfig& c, std::ostream& log, std::ostream& err);
int cmd_map(const RunConfig& c, const std::optional<std::filesystem::path>& solution,
            std::ostream& log, std::ostream& err);
int cmd_verify(const RunConfig& c, const std::optional<std::filesystem::path>& solution,
               std::ostream& log, std::ostream& err);

}  // namespace confmap::app
