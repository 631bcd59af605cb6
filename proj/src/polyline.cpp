#include "confmap/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace confmap::polyline {
namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double u = 0.0;
  if (len2 > 0.0) u = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(a + u * ab - p);
}

int orientation(cplx a, cplx b, cplx c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(cplx a, cplx b, cplx p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

double one_sided(std::span<const cplx> from, std::span<const cplx> to) {
  double worst = 0.0;
  for (const cplx p : from) worst = std::max(worst, distance(p, to));
  return worst;
}

}  // namespace

double distance(cplx point, std::span<const cplx> poly) {
  const std::size_t n = poly.size();
  if (n == 0) return std::numeric_limits<double>::infinity();
  if (n == 1) return std::abs(point - poly[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, segment_distance(point, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

int winding(std::span<const cplx> poly, cplx point) {
  const std::size_t n = poly.size();
  int w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = poly[i] - point;
    const cplx b = poly[(i + 1) % n] - point;
    if (a.imag() <= 0.0) {
      if (b.imag() > 0.0 && cross(a, b) > 0.0) ++w;
    } else {
      if (b.imag() <= 0.0 && cross(a, b) < 0.0) --w;
    }
  }
  return w;
}

double hausdorff(std::span<const cplx> a, std::span<const cplx> b) {
  return std::max(one_sided(a, b), one_sided(b, a));
}

bool is_simple(std::span<const cplx> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;

  struct Box {
    double xmin, xmax, ymin, ymax;
  };
  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = poly[i];
    const cplx b = poly[(i + 1) % n];
    boxes[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()),
                std::min(a.imag(), b.imag()), std::max(a.imag(), b.imag())};
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return boxes[l].xmin < boxes[r].xmin; });

  auto adjacent = [n](std::size_t i, std::size_t j) {
    const std::size_t d = i > j ? i - j : j - i;
    return d == 1 || d == n - 1;
  };

  std::vector<std::size_t> active;
  for (const std::size_t s : order) {
    const Box& bs = boxes[s];
    std::erase_if(active, [&](std::size_t a) { return boxes[a].xmax < bs.xmin; });
    for (const std::size_t a : active) {
      if (adjacent(a, s)) continue;
      const Box& ba = boxes[a];
      if (ba.ymax < bs.ymin || bs.ymax < ba.ymin) continue;
      if (segments_intersect(poly[a], poly[(a + 1) % n], poly[s], poly[(s + 1) % n])) return false;
    }
    active.push_back(s);
  }
  return true;
}

}  // namespace confmap::polyline
