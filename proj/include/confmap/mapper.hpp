#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "confmap/boundary.hpp"
#include "confmap/corrector.hpp"
#include "confmap/kernels.hpp"

namespace confmap {

struct MapOptions {
  int Nq = 8192;           ///< trapezoid nodes per period in t
  int Nq_spline = 256;     ///< nodes per corrected segment, uniform in phi
  double delta_rim = 5e-3; ///< trusted region is |zeta| <= 1 - delta_rim
};

/// Cauchy-integral quadrature f(zeta) = sum_k c_k / (w_k - zeta) with nodes
/// w_k on the unit circle. Raw correspondences use a uniform t-grid; corrected
/// ones integrate the complementary arcs in t and each spline segment in phi.
class DiskMap {
 public:
  DiskMap(std::shared_ptr<const BoundaryCorrespondence> correspondence, MapOptions options = {});

  const BoundaryCorrespondence& correspondence() const noexcept { return *corr_; }
  const TrigBoundary& boundary() const noexcept { return corr_->boundary(); }
  const MapOptions& options() const noexcept { return options_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Throws Config when |zeta| > 1 - delta_rim.
  cplx operator()(cplx zeta) const;

 private:
  std::shared_ptr<const BoundaryCorrespondence> corr_;
  MapOptions options_;
  std::vector<cplx> nodes_;
  std::vector<cplx> weights_;
};

cplx map_point(const DiskMap& m, cplx zeta);

struct PointError {
  std::size_t index = 0;
  std::string message;
};

/// Values are NaN at the indices listed in errors.
struct GridResult {
  std::vector<cplx> values;
  std::vector<PointError> errors;
};

GridResult map_grid(const DiskMap& m, std::span<const cplx> points,
                    Execution exec = Execution::Parallel);

struct MapReport {
  double f0_abs = 0.0;
  double boundary_dev = 0.0;
  int winding = 0;
  double cr_residual = 0.0;
};

/// |f(0)|, max distance of the image of |zeta| = 1 - delta_rim (1024 angles)
/// to a 4096-point boundary polyline, its winding about 0, and the discrete
/// Cauchy-Riemann residual |f_x + i f_y| (h = 1e-4) on interior samples.
MapReport verify(const DiskMap& m);

/// Max distance to the boundary polyline of f(r e^{i a}) over `angles`
/// uniform a, skipping a within `radius` of any of `centres` (mod 2*pi).
double boundary_deviation(const DiskMap& m, double r, int angles,
                          std::span<const double> centres = {}, double radius = 0.0);

/// Symmetric Hausdorff distance between the image of |zeta| = r and the
/// boundary polyline.
double level_circle_hausdorff(const DiskMap& m, double r, int angles = 2048,
                              int boundary_points = 4096);

/// Image of a circle |zeta| = r or of a ray arg zeta = a, 0 <= |zeta| <= 1 - delta.
struct LevelLine {
  std::string family;  ///< "radius" or "angle"
  int index = 0;
  double parameter = 0.0;
  std::vector<cplx> zeta;
  std::vector<cplx> image;
};

std::vector<LevelLine> level_lines(const DiskMap& m, std::span<const double> radii, int rays,
                                   int samples_per_line, Execution exec = Execution::Parallel);

}  // namespace confmap
