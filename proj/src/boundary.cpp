#include "confmap/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "confmap/error.hpp"
#include "confmap/fourier.hpp"
#include "confmap/polyline.hpp"

namespace confmap {
namespace {

constexpr int kScanPoints = 16384;
constexpr int kPolylinePoints = 4096;

double speed(const TrigBoundary& b, double t) { return std::abs(b.derivative(t, 1)); }

// Golden-section refinement of a bracketed minimum of |z0'|.
double refine_speed_minimum(const TrigBoundary& b, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = speed(b, x1);
  double f2 = speed(b, x2);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = speed(b, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = speed(b, x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double wrap_parameter(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double parameter_offset(double t, double t0) {
  double d = std::remainder(t - t0, kTwoPi);
  if (d >= kPi) d -= kTwoPi;
  return d;
}

TrigBoundary::TrigBoundary(int m, int n, std::vector<cplx> coeffs)
    : m_(m), n_(n), coeffs_(std::move(coeffs)) {
  if (m_ < 0 || n_ < 1) {
    throw Error(ErrorKind::Config, "boundary", "need m >= 0 and n >= 1");
  }
  if (coeffs_.size() != static_cast<std::size_t>(m_ + n_ + 1)) {
    throw Error(ErrorKind::Config, "boundary", "coefficient table must hold m + n + 1 entries");
  }
  for (const cplx c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorKind::Config, "boundary", "non-finite coefficient");
    }
  }
}

TrigBoundary TrigBoundary::from_terms(std::span<const std::pair<int, cplx>> terms) {
  int m = 0;
  int n = 1;
  for (const auto& [k, d] : terms) {
    m = std::max(m, -k);
    n = std::max(n, k);
  }
  std::vector<cplx> coeffs(m + n + 1, cplx(0.0));
  for (const auto& [k, d] : terms) coeffs[k + m] += d;
  return TrigBoundary(m, n, std::move(coeffs));
}

TrigBoundary TrigBoundary::from_terms(std::initializer_list<std::pair<int, cplx>> terms) {
  return from_terms(std::span<const std::pair<int, cplx>>(terms.begin(), terms.size()));
}

cplx TrigBoundary::coeff(int k) const noexcept {
  if (k < -m_ || k > n_) return 0.0;
  return coeffs_[k + m_];
}

cplx TrigBoundary::eval(double t) const {
  cplx sum = 0.0;
  for (int k = -m_; k <= n_; ++k) sum += coeffs_[k + m_] * std::polar(1.0, k * t);
  return sum;
}

cplx TrigBoundary::derivative(double t, int order) const {
  if (order != 1 && order != 2) {
    throw Error(ErrorKind::Config, "boundary", "derivative order must be 1 or 2");
  }
  cplx sum = 0.0;
  for (int k = -m_; k <= n_; ++k) {
    const cplx ik(0.0, static_cast<double>(k));
    const cplx factor = order == 1 ? ik : ik * ik;
    sum += factor * coeffs_[k + m_] * std::polar(1.0, k * t);
  }
  return sum;
}

TrigBoundary TrigBoundary::scaled(cplx factor) const {
  std::vector<cplx> c = coeffs_;
  for (cplx& v : c) v *= factor;
  return TrigBoundary(m_, n_, std::move(c));
}

std::vector<cplx> sample_curve(const TrigBoundary& b, int count) {
  std::vector<cplx> pts(count);
  for (int j = 0; j < count; ++j) pts[j] = b.eval(kTwoPi * j / count);
  return pts;
}

FitResult fit_from_samples(std::span<const cplx> samples, int m, int n) {
  if (m < 0 || n < 1) {
    throw Error(ErrorKind::Config, "boundary", "need m >= 0 and n >= 1");
  }
  const int count = static_cast<int>(samples.size());
  const int needed = 2 * (m + n) + 1;
  if (count < needed) {
    throw Error(ErrorKind::Config, "boundary",
                "Nyquist bound violated: fitting m=" + std::to_string(m) + ", n=" +
                    std::to_string(n) + " needs at least 2(m+n)+1 = " + std::to_string(needed) +
                    " samples, got " + std::to_string(count));
  }
  const std::vector<cplx> c = dft(samples);
  std::vector<cplx> coeffs(m + n + 1);
  for (int k = -m; k <= n; ++k) coeffs[k + m] = c[(k % count + count) % count];
  TrigBoundary boundary(m, n, std::move(coeffs));

  double residual = 0.0;
  for (int j = 0; j < count; ++j) {
    residual = std::max(residual, std::abs(boundary.eval(kTwoPi * j / count) - samples[j]));
  }
  validate_admissible(boundary);
  return {std::move(boundary), residual};
}

std::vector<AnglePoint> detect_corners(const TrigBoundary& b, double threshold,
                                       double tangent_offset) {
  if (!(threshold > 0.0)) {
    throw Error(ErrorKind::Config, "boundary", "corner threshold must be positive");
  }
  const int G = kScanPoints;
  const double h = kTwoPi / G;
  std::vector<double> sp(G);
  for (int j = 0; j < G; ++j) sp[j] = speed(b, j * h);
  const double peak = *std::max_element(sp.begin(), sp.end());

  std::vector<AnglePoint> corners;
  for (int j = 0; j < G; ++j) {
    const double prev = sp[(j + G - 1) % G];
    const double next = sp[(j + 1) % G];
    if (!(sp[j] < prev && sp[j] <= next && sp[j] < threshold * peak)) continue;
    const double t0 = wrap_parameter(refine_speed_minimum(b, (j - 1) * h, (j + 1) * h));
    const cplx before = b.derivative(t0 - tangent_offset, 1);
    const cplx after = b.derivative(t0 + tangent_offset, 1);
    const double turn = std::arg(after / before);
    corners.push_back({t0, 1.0 - turn / kPi});
  }
  return corners;
}

int winding_number(const TrigBoundary& b, cplx point, double tolerance) {
  const std::vector<cplx> poly = sample_curve(b, kPolylinePoints);
  if (polyline::distance(point, poly) <= tolerance) {
    throw Error(ErrorKind::Config, "boundary", "point lies on the boundary curve");
  }
  return polyline::winding(poly, point);
}

void validate_admissible(const TrigBoundary& b) {
  const int G = kPolylinePoints;
  double peak = 0.0;
  double low = std::numeric_limits<double>::infinity();
  for (int j = 0; j < G; ++j) {
    const double s = speed(b, kTwoPi * j / G);
    peak = std::max(peak, s);
    low = std::min(low, s);
  }
  if (!(low > 1e-14 * peak)) {
    throw Error(ErrorKind::Invariant, "boundary", "|z0'| vanishes on the sample grid");
  }
  const std::vector<cplx> poly = sample_curve(b, G);
  if (!polyline::is_simple(poly)) {
    throw Error(ErrorKind::Invariant, "boundary", "boundary curve self-intersects");
  }
  if (polyline::distance(0.0, poly) <= 1e-12 * peak) {
    throw Error(ErrorKind::Invariant, "boundary", "origin lies on the boundary curve");
  }
  const int w = polyline::winding(poly, 0.0);
  if (w != 1) {
    throw Error(ErrorKind::Invariant, "boundary",
                "winding number about the origin is " + std::to_string(w) +
                    " (must be +1: origin inside, counterclockwise trace)");
  }
}

}  // namespace confmap
