#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "confmap/error.hpp"
#include "confmap/mapper.hpp"
#include "fixtures.hpp"

using namespace confmap;
using fixtures::cplx;

namespace {

std::shared_ptr<const BoundaryCorrespondence> raw_correspondence(const TrigBoundary& b, int M,
                                                                 int N) {
  return std::make_shared<const BoundaryCorrespondence>(fixtures::solve_raw(b, M, N));
}

std::vector<cplx> polar_grid(std::initializer_list<double> radii, int angles) {
  std::vector<cplx> pts;
  for (double r : radii) {
    for (int j = 0; j < angles; ++j) pts.push_back(std::polar(r, kTwoPi * j / angles));
  }
  return pts;
}

}  // namespace

TEST_CASE("unit circle maps to itself") {
  const DiskMap f(raw_correspondence(fixtures::circle(), 4, 64));
  CHECK(std::abs(f(0.5) - cplx(0.5)) < 1e-13);
  CHECK(std::abs(map_point(f, cplx(0.0, -0.7)) - cplx(0.0, -0.7)) < 1e-13);
  CHECK(std::abs(f(0.0)) < 1e-14);
}

TEST_CASE("circle of radius 2 doubles") {
  const DiskMap f(raw_correspondence(fixtures::circle(2.0), 4, 64));
  CHECK(std::abs(f(cplx(0.0, 0.3)) - cplx(0.0, 0.6)) < 1e-13);
  const std::vector<cplx> pts =
      polar_grid({0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99}, 64);
  const GridResult g = map_grid(f, pts);
  CHECK(g.errors.empty());
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(g.values[i] - 2.0 * pts[i]));
  MESSAGE("max |f - 2 zeta| on the polar grid: " << worst);
  CHECK(worst < 1e-12);
}

TEST_CASE("quadrature converges in Nq") {
  const auto c = raw_correspondence(fixtures::example3(), 64, 1024);
  const DiskMap coarse(c, MapOptions{4096, 256, 5e-3});
  const DiskMap fine(c, MapOptions{8192, 256, 5e-3});
  for (const cplx z : polar_grid({0.3, 0.8, 0.95}, 16)) {
    CHECK(std::abs(coarse(z) - fine(z)) < 1e-10);
  }
  CHECK(fine.node_count() == 8192u);
}

TEST_CASE("points outside the trusted disk are rejected") {
  const DiskMap f(raw_correspondence(fixtures::circle(), 4, 64));
  try {
    f(cplx(0.999, 0.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  CHECK_NOTHROW(f(cplx(0.995, 0.0)));
  CHECK_THROWS_AS(DiskMap(raw_correspondence(fixtures::circle(), 4, 64), MapOptions{0, 256, 5e-3}),
                  Error);
}

TEST_CASE("grid mapping reports failing points by index") {
  const DiskMap f(raw_correspondence(fixtures::circle(), 4, 64));
  const std::vector<cplx> pts{0.1, cplx(0.0, 0.2), 1.5, -0.3};
  const GridResult g = map_grid(f, pts);
  REQUIRE(g.values.size() == 4u);
  REQUIRE(g.errors.size() == 1u);
  CHECK(g.errors[0].index == 2u);
  CHECK_FALSE(g.errors[0].message.empty());
  CHECK(std::isnan(g.values[2].real()));
  CHECK(std::abs(g.values[3] - cplx(-0.3)) < 1e-13);
  CHECK(map_grid(f, std::vector<cplx>{}).values.empty());
}

TEST_CASE("parallel and serial grid mapping agree bitwise") {
  const DiskMap f(raw_correspondence(fixtures::example3(), 32, 512));
  const std::vector<cplx> pts = polar_grid({0.2, 0.6, 0.9}, 100);
  const GridResult a = map_grid(f, pts, Execution::Parallel);
  const GridResult b = map_grid(f, pts, Execution::Serial);
  REQUIRE(a.values.size() == b.values.size());
  bool same = true;
  for (std::size_t i = 0; i < a.values.size(); ++i) same = same && a.values[i] == b.values[i];
  CHECK(same);
}

TEST_CASE("verify on the unit circle") {
  const DiskMap f(raw_correspondence(fixtures::circle(), 4, 64));
  const MapReport r = verify(f);
  CHECK(r.f0_abs < 1e-14);
  CHECK(r.winding == 1);
  CHECK(r.boundary_dev <= 5e-3 * (1 + 1e-6));
  CHECK(r.boundary_dev >= 5e-3 * (1 - 1e-3));
  CHECK(r.cr_residual < 1e-8);
  CHECK(level_circle_hausdorff(f, 0.99) == doctest::Approx(0.01).epsilon(1e-3));
}

TEST_CASE("verify on example 3") {
  const DiskMap f(raw_correspondence(fixtures::example3(), 64, 1024));
  const MapReport r = verify(f);
  MESSAGE("f0 " << r.f0_abs << ", dev " << r.boundary_dev << ", cr " << r.cr_residual);
  CHECK(r.winding == 1);
  CHECK(r.f0_abs < 1e-10);
  CHECK(r.cr_residual < 1e-5);
}

TEST_CASE("boundary deviation skips excluded arcs") {
  const DiskMap f(raw_correspondence(fixtures::circle(), 4, 64));
  const double all = boundary_deviation(f, 0.9, 256);
  const std::vector<double> centres{0.0, kPi};
  const double some = boundary_deviation(f, 0.9, 256, centres, 0.5);
  CHECK(all == doctest::Approx(0.1).epsilon(1e-4));
  CHECK(some == doctest::Approx(0.1).epsilon(1e-4));
}

TEST_CASE("level lines") {
  const DiskMap f(raw_correspondence(fixtures::circle(2.0), 4, 64));
  const std::vector<double> radii{0.25, 0.5};
  const std::vector<LevelLine> lines = level_lines(f, radii, 4, 16);
  REQUIRE(lines.size() == 6u);
  int circles = 0, rays = 0;
  for (const LevelLine& l : lines) {
    REQUIRE(l.zeta.size() == l.image.size());
    CHECK(l.zeta.size() == 16u);
    for (std::size_t i = 0; i < l.zeta.size(); ++i) {
      CHECK(std::abs(l.image[i] - 2.0 * l.zeta[i]) < 1e-12);
      CHECK(std::abs(l.zeta[i]) <= 1 - 5e-3 + 1e-15);
    }
    if (l.family == "radius") {
      ++circles;
      CHECK(std::abs(std::abs(l.zeta[3]) - l.parameter) < 1e-15);
    } else {
      CHECK(l.family == "angle");
      ++rays;
    }
  }
  CHECK(circles == 2);
  CHECK(rays == 4);
}

TEST_CASE("a vanishing correction interval reproduces the raw map") {
  const auto raw = fixtures::solve_raw(fixtures::example3(), 64, 1024);
  const MonotoneSpline s = build_spline(angle_function(*raw), 1.0, 1e-4, 1e-4, SplineKind::Linear);
  const auto corrected =
      std::make_shared<const BoundaryCorrespondence>(raw, std::vector<MonotoneSpline>{s});
  const DiskMap fc(corrected);
  const DiskMap fr(std::make_shared<const BoundaryCorrespondence>(raw));
  double worst = 0.0;
  for (const cplx z : polar_grid({0.0, 0.3, 0.6, 0.9}, 32)) worst = std::max(worst, std::abs(fc(z) - fr(z)));
  MESSAGE("max |corrected - raw| = " << worst);
  CHECK(worst < 1e-5);
}
