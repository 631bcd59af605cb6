#include "confmap/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "confmap/error.hpp"
#include "confmap/polyline.hpp"

namespace confmap {
namespace {

constexpr int kVerifyAngles = 1024;
constexpr int kBoundaryPolyline = 4096;
constexpr double kCrStep = 1e-4;

std::vector<cplx> circle(double r, int count) {
  std::vector<cplx> pts(count);
  for (int j = 0; j < count; ++j) pts[j] = std::polar(r, kTwoPi * j / count);
  return pts;
}

std::vector<cplx> evaluate_all(const DiskMap& m, std::span<const cplx> pts) {
  GridResult g = map_grid(m, pts);
  if (!g.errors.empty()) {
    throw Error(ErrorKind::Config, "mapper", g.errors.front().message);
  }
  return std::move(g.values);
}

double angular_distance(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

}  // namespace

DiskMap::DiskMap(std::shared_ptr<const BoundaryCorrespondence> correspondence, MapOptions options)
    : corr_(std::move(correspondence)), options_(options) {
  if (options_.Nq < 8 || options_.Nq_spline < 2) {
    throw Error(ErrorKind::Config, "mapper", "quadrature sizes too small (Nq >= 8, Nq_spline >= 2)");
  }
  if (!(options_.delta_rim > 0.0 && options_.delta_rim < 1.0)) {
    throw Error(ErrorKind::Config, "mapper", "delta_rim must lie in (0, 1)");
  }
  const TrigBoundary& b = corr_->boundary();
  const RawCorrespondence& raw = corr_->raw();
  const auto& segs = corr_->segments();

  auto add_t_node = [&](double t, double weight) {
    const cplx e = std::polar(1.0, raw.value(t));
    nodes_.push_back(e);
    weights_.push_back(weight * b.eval(t) * e * raw.slope(t) / kTwoPi);
  };

  if (segs.empty()) {
    const int Nq = options_.Nq;
    nodes_.reserve(Nq);
    weights_.reserve(Nq);
    for (int k = 0; k < Nq; ++k) add_t_node(kTwoPi * k / Nq, kTwoPi / Nq);
    return;
  }

  const double spacing = kTwoPi / options_.Nq;
  const std::size_t n = segs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const MonotoneSpline& cur = segs[i];
    const MonotoneSpline& next = segs[(i + 1) % n];
    // Complementary arc from the end of this segment to the start of the next.
    const double a = cur.upper();
    double b_end = next.lower();
    while (b_end <= a) b_end += kTwoPi;
    const int count = std::max(1, static_cast<int>(std::lround((b_end - a) / spacing)));
    const double w = (b_end - a) / count;
    for (int j = 0; j <= count; ++j) {
      const double half = (j == 0 || j == count) ? 0.5 : 1.0;
      add_t_node(a + (b_end - a) * j / count, half * w);
    }
    // Spline segment, uniform in phi.
    const int ns = options_.Nq_spline;
    const double ya = cur.value_lower();
    const double yb = cur.value_upper();
    const double wp = (yb - ya) / ns;
    for (int j = 0; j <= ns; ++j) {
      const double half = (j == 0 || j == ns) ? 0.5 : 1.0;
      const double phi = ya + (yb - ya) * j / ns;
      const double t = j == 0 ? cur.lower() : (j == ns ? cur.upper() : cur.invert(phi));
      const cplx e = std::polar(1.0, phi);
      nodes_.push_back(e);
      weights_.push_back(half * wp * b.eval(t) * e / kTwoPi);
    }
  }
}

cplx DiskMap::operator()(cplx zeta) const {
  const double limit = 1.0 - options_.delta_rim;
  if (!(std::abs(zeta) <= limit * (1.0 + 1e-14))) {
    std::ostringstream msg;
    msg << "|zeta| = " << std::abs(zeta) << " outside the trusted region |zeta| <= " << limit;
    throw Error(ErrorKind::Config, "mapper", msg.str());
  }
  cplx sum = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) sum += weights_[k] / (nodes_[k] - zeta);
  return sum;
}

cplx map_point(const DiskMap& m, cplx zeta) { return m(zeta); }

GridResult map_grid(const DiskMap& m, std::span<const cplx> points, Execution exec) {
  const int count = static_cast<int>(points.size());
  GridResult result;
  result.values.assign(count, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  std::vector<std::string> messages(count);
  auto body = [&](int i) {
    try {
      result.values[i] = m(points[i]);
    } catch (const std::exception& e) {
      messages[i] = e.what();
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < count; ++i) body(i);
  } else {
    for (int i = 0; i < count; ++i) body(i);
  }
  for (int i = 0; i < count; ++i) {
    if (!messages[i].empty()) result.errors.push_back({static_cast<std::size_t>(i), messages[i]});
  }
  return result;
}

double boundary_deviation(const DiskMap& m, double r, int angles, std::span<const double> centres,
                          double radius) {
  const std::vector<cplx> poly = sample_curve(m.boundary(), kBoundaryPolyline);
  std::vector<cplx> pts;
  for (int j = 0; j < angles; ++j) {
    const double a = kTwoPi * j / angles;
    const bool excluded = std::any_of(centres.begin(), centres.end(),
                                      [&](double c) { return angular_distance(a, c) < radius; });
    if (!excluded) pts.push_back(std::polar(r, a));
  }
  const std::vector<cplx> image = evaluate_all(m, pts);
  double worst = 0.0;
  for (const cplx w : image) worst = std::max(worst, polyline::distance(w, poly));
  return worst;
}

double level_circle_hausdorff(const DiskMap& m, double r, int angles, int boundary_points) {
  const std::vector<cplx> poly = sample_curve(m.boundary(), boundary_points);
  const std::vector<cplx> image = evaluate_all(m, circle(r, angles));
  return polyline::hausdorff(image, poly);
}

MapReport verify(const DiskMap& m) {
  MapReport rep;
  rep.f0_abs = std::abs(m(0.0));

  const double r = 1.0 - m.options().delta_rim;
  const std::vector<cplx> image = evaluate_all(m, circle(r, kVerifyAngles));
  const std::vector<cplx> poly = sample_curve(m.boundary(), kBoundaryPolyline);
  for (const cplx w : image) rep.boundary_dev = std::max(rep.boundary_dev, polyline::distance(w, poly));
  rep.winding = polyline::winding(image, 0.0);

  const double radii[] = {0.0, 0.3, 0.6, 0.9};
  std::vector<cplx> probes;
  for (const double rr : radii) {
    const int count = rr == 0.0 ? 1 : 32;
    for (int j = 0; j < count; ++j) {
      const cplx c = std::polar(rr, kTwoPi * j / count);
      for (const cplx d : {cplx(kCrStep, 0.0), cplx(-kCrStep, 0.0), cplx(0.0, kCrStep),
                           cplx(0.0, -kCrStep)}) {
        probes.push_back(c + d);
      }
    }
  }
  const std::vector<cplx> f = evaluate_all(m, probes);
  for (std::size_t i = 0; i + 3 < f.size(); i += 4) {
    const cplx fx = (f[i] - f[i + 1]) / (2.0 * kCrStep);
    const cplx fy = (f[i + 2] - f[i + 3]) / (2.0 * kCrStep);
    rep.cr_residual = std::max(rep.cr_residual, std::abs(fx + cplx(0.0, 1.0) * fy));
  }
  return rep;
}

std::vector<LevelLine> level_lines(const DiskMap& m, std::span<const double> radii, int rays,
                                   int samples_per_line, Execution exec) {
  std::vector<LevelLine> lines;
  const double rmax = 1.0 - m.options().delta_rim;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    LevelLine l{"radius", static_cast<int>(i), radii[i], circle(radii[i], samples_per_line), {}};
    lines.push_back(std::move(l));
  }
  for (int i = 0; i < rays; ++i) {
    const double a = kTwoPi * i / rays;
    LevelLine l{"angle", i, a, {}, {}};
    for (int j = 0; j < samples_per_line; ++j) {
      l.zeta.push_back(std::polar(rmax * j / (samples_per_line - 1), a));
    }
    lines.push_back(std::move(l));
  }
  for (LevelLine& l : lines) {
    GridResult g = map_grid(m, l.zeta, exec);
    if (!g.errors.empty()) throw Error(ErrorKind::Config, "mapper", g.errors.front().message);
    l.image = std::move(g.values);
  }
  return lines;
}

}  // namespace confmap
