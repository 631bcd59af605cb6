#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "confmap/boundary.hpp"
#include "confmap/corrector.hpp"
#include "confmap/fredholm.hpp"
#include "confmap/mapper.hpp"

namespace fixtures {

using confmap::cplx;
using confmap::kPi;
using confmap::kTwoPi;
using confmap::TrigBoundary;

inline TrigBoundary circle(double r = 1.0, double phase = 0.0) {
  return TrigBoundary::from_terms({{1, std::polar(r, phase)}});
}

inline TrigBoundary example3() {
  return TrigBoundary::from_terms({{1, 1.0}, {-2, 0.25}, {-3, cplx(0.0, 0.125)}});
}

inline TrigBoundary ellipse() { return TrigBoundary::from_terms({{1, 1.0}, {-1, 0.3}}); }

// Position along one side with eased ends: speed vanishes at u = 0 and u = 1.
inline double ease(double u, double w) {
  const double total = 1.0 - 2.0 * w / 3.0;
  double v;
  if (u < w) {
    const double x = u / w;
    v = w * (x * x - x * x * x / 3.0);
  } else if (u > 1.0 - w) {
    const double x = (1.0 - u) / w;
    v = total - w * (x * x - x * x * x / 3.0);
  } else {
    v = 2.0 * w / 3.0 + (u - w);
  }
  return v / total;
}

/// Unit semidisk shifted down by 4/(3 pi), traced counterclockwise from the
/// right corner: arc first, then the diameter.
inline std::vector<cplx> semidisk_samples(int count = 256, double w = 0.1) {
  const double shift = 4.0 / (3.0 * kPi);
  const double arc = kPi / (kPi + 2.0);
  std::vector<cplx> pts;
  for (int j = 0; j < count; ++j) {
    const double x = static_cast<double>(j) / count;
    cplx z;
    if (x < arc) {
      z = std::polar(1.0, kPi * ease(x / arc, w));
    } else {
      z = cplx(-1.0 + 2.0 * ease((x - arc) / (1.0 - arc), w), 0.0);
    }
    pts.push_back(z - cplx(0.0, shift));
  }
  return pts;
}

/// Parameters of the two semidisk corners in the sampling above.
inline double semidisk_corner_right() { return 0.0; }
inline double semidisk_corner_left() { return kTwoPi * kPi / (kPi + 2.0); }

inline TrigBoundary semidisk() {
  const std::vector<cplx> pts = semidisk_samples();
  return confmap::fit_from_samples(pts, 16, 16).boundary;
}

inline std::shared_ptr<const confmap::RawCorrespondence> solve_raw(const TrigBoundary& b, int M,
                                                                   int N) {
  const confmap::FredholmSolution sol = confmap::solve(confmap::assemble_system(b, M, N));
  return std::make_shared<const confmap::RawCorrespondence>(b, sol);
}

inline double angular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, kTwoPi));
}

/// Forward-difference derivative oracle of the unwrapped argument of a
/// complex-valued function.
template <class F>
double arg_derivative_forward(F f, double x, double h) {
  return std::arg(f(x + h) / f(x)) / h;
}

}  // namespace fixtures
