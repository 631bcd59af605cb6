#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "confmap/error.hpp"
#include "confmap/io.hpp"
#include "fixtures.hpp"

using namespace confmap;
using fixtures::cplx;
using io::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "confmap_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("boundary spec from coefficients round-trips") {
  const TrigBoundary b = fixtures::example3();
  const std::vector<AnglePoint> corners{{0.5, 0.4}};
  const json j = io::boundary_to_json(b, corners);
  const io::BoundarySpec spec = io::parse_boundary_spec(j);
  CHECK(spec.boundary.m() == 3);
  CHECK(spec.boundary.n() == 1);
  for (int k = -3; k <= 1; ++k) CHECK(spec.boundary.coeff(k) == b.coeff(k));
  REQUIRE(spec.corners.size() == 1u);
  CHECK(spec.corners[0].t0 == 0.5);
  CHECK(spec.corners[0].lambda == 0.4);
  CHECK_FALSE(spec.fit_residual.has_value());
  CHECK(spec.sample_count == 0);
  CHECK_FALSE(j.contains("fit_residual"));
  CHECK(io::boundary_to_json(b, {}, 1e-3).at("fit_residual") == 1e-3);
}

TEST_CASE("boundary spec from samples is fitted") {
  json j;
  j["samples"] = json::array();
  for (const cplx p : sample_curve(fixtures::ellipse(), 32)) j["samples"].push_back({p.real(), p.imag()});
  j["m"] = 1;
  j["n"] = 1;
  const io::BoundarySpec spec = io::parse_boundary_spec(j);
  CHECK(spec.sample_count == 32);
  REQUIRE(spec.fit_residual.has_value());
  CHECK(*spec.fit_residual < 1e-14);
  CHECK(std::abs(spec.boundary.coeff(-1) - cplx(0.3)) < 1e-14);
}

TEST_CASE("malformed boundary specs are configuration errors") {
  auto kind_of = [](const json& j) {
    try {
      io::parse_boundary_spec(j);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Invariant;
  };
  CHECK(kind_of(json::object()) == ErrorKind::Config);
  CHECK(kind_of(json{{"coeffs", json::array({{{"k", 1}}})}}) == ErrorKind::Config);
  CHECK(kind_of(json{{"samples", json::array({{1.0, 0.0}})}, {"m", 0}}) == ErrorKind::Config);
  CHECK(kind_of(json{{"samples", json::array({1.0, 0.0})}, {"m", 0}, {"n", 1}}) ==
        ErrorKind::Config);
  CHECK_THROWS_AS(io::parse_corners(json::array({{{"t0", 1.0}, {"lambda", 0.0}}})), Error);
}

TEST_CASE("corner parameters are wrapped") {
  const std::vector<AnglePoint> c = io::parse_corners(json::array({{{"t0", -0.5}, {"lambda", 0.5}}}));
  REQUIRE(c.size() == 1u);
  CHECK(c[0].t0 == doctest::Approx(kTwoPi - 0.5));
}

TEST_CASE("solution JSON has exactly M, alpha, beta, residual") {
  FredholmSolution s;
  s.M = 2;
  s.alpha = {0.1, -0.2};
  s.beta = {0.3, 0.4};
  s.residual_norm = 1e-9;
  const json j = io::solution_to_json(s);
  CHECK(j.size() == 4u);
  for (const char* key : {"M", "alpha", "beta", "residual"}) CHECK(j.contains(key));
  const FredholmSolution back = io::solution_from_json(j);
  CHECK(back.M == 2);
  CHECK(back.alpha == s.alpha);
  CHECK(back.beta == s.beta);
  CHECK(back.residual_norm == s.residual_norm);

  json shortj = j;
  shortj["alpha"] = json::array({0.1});
  CHECK_THROWS_AS(io::solution_from_json(shortj), Error);
}

TEST_CASE("report and correction JSON keys") {
  const json r = io::report_to_json(MapReport{1e-3, 2e-3, 1, 3e-3});
  for (const char* key : {"f0_abs", "boundary_dev", "winding", "cr_residual"}) CHECK(r.contains(key));
  CHECK(r.at("winding") == 1);

  const CornerCorrection c{MonotoneSpline::from_endpoints(1.0, 0.2, 0.3, 0.0, 1.0, 1.0, 1.0,
                                                          SplineKind::Linear),
                           2};
  const json cj = io::correction_to_json(c);
  CHECK(cj.at("t0") == 1.0);
  CHECK(cj.at("eps1") == 0.2);
  CHECK(cj.at("eps2") == 0.3);
  CHECK(cj.at("kind") == "linear");
  CHECK(cj.at("theta_star") == 0.5);
  CHECK(cj.at("retries") == 2);
}

TEST_CASE("sample and point files") {
  const auto csv = scratch("pts.csv");
  io::write_text_file(csv, "re,im\n0.5,0.25\n# comment\n\n-1,2\n");
  const std::vector<cplx> pts = io::read_points_csv(csv);
  REQUIRE(pts.size() == 2u);
  CHECK(pts[0] == cplx(0.5, 0.25));
  CHECK(pts[1] == cplx(-1.0, 2.0));
  CHECK(io::read_samples_file(csv) == pts);

  const auto js = scratch("pts.json");
  io::write_text_file(js, R"({"samples": [[1, 0], [0, 1]]})");
  CHECK(io::read_samples_file(js) == std::vector<cplx>{{1.0, 0.0}, {0.0, 1.0}});

  io::write_text_file(scratch("bad.csv"), "1,2\nx,y,z\n");
  CHECK_THROWS_AS(io::read_points_csv(scratch("bad.csv")), Error);
  CHECK_THROWS_AS(io::read_points_csv(scratch("missing.csv")), Error);
  io::write_text_file(scratch("bad.json"), "{");
  CHECK_THROWS_AS(io::read_json_file(scratch("bad.json")), Error);

  const auto nested = scratch("a/b/c.txt");
  io::write_text_file(nested, "x");
  CHECK(std::filesystem::exists(nested));
}

TEST_CASE("CSV writers") {
  std::ostringstream grid;
  const std::vector<cplx> z{{0.5, 0.0}}, f{{1.0, -0.125}};
  io::write_grid_csv(grid, z, f);
  CHECK(grid.str() == "re_zeta,im_zeta,re_f,im_f\n0.5,0,1,-0.125\n");

  LevelLine l;
  l.family = "radius";
  l.index = 1;
  l.parameter = 0.5;
  l.zeta = {cplx(0.5, 0.0)};
  l.image = {cplx(1.0, 0.0)};
  std::ostringstream lines;
  io::write_level_lines_csv(lines, std::vector<LevelLine>{l});
  CHECK(lines.str() == "family,index,parameter,re_zeta,im_zeta,re_f,im_f\nradius,1,0.5,0.5,0,1,0\n");

  const KernelGrid g = fill_kernel_grid(fixtures::circle(), 4);
  std::ostringstream kernel;
  io::write_kernel_csv(kernel, g);
  const std::string text = kernel.str();
  CHECK(text.rfind("kind,i,j,value\nK,0,0,", 0) == 0);
  CHECK(text.find("P,3,-1,") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 16 + 4);
}
