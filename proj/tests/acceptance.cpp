#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "confmap/app.hpp"
#include "confmap/kernels.hpp"
#include "fixtures.hpp"

using namespace confmap;
using fixtures::cplx;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* tag, bool pass, const std::string& detail) {
  std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", tag, detail.c_str());
  std::fflush(stdout);
}

std::vector<cplx> disk_points(int count, double radius, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> pts;
  for (int i = 0; i < count; ++i) pts.push_back(std::polar(radius * std::sqrt(u(rng)), kTwoPi * u(rng)));
  return pts;
}

std::shared_ptr<const BoundaryCorrespondence> raw_correspondence(const TrigBoundary& b, int M, int N) {
  return std::make_shared<const BoundaryCorrespondence>(fixtures::solve_raw(b, M, N));
}

// Smallest forward step of theta on a uniform grid restricted to |t - t0| <= radius.
double min_step_near(const AngleFunction& theta, double t0, double radius, int grid = 16384) {
  const double h = kTwoPi / grid;
  const int half = static_cast<int>(radius / h);
  double worst = INFINITY;
  for (int i = -half; i < half; ++i) {
    worst = std::min(worst, theta.value(t0 + (i + 1) * h) - theta.value(t0 + i * h));
  }
  return worst;
}

std::filesystem::path scratch_dir(const std::string& name) {
  return std::filesystem::temp_directory_path() / "confmap_acceptance" / name;
}

}  // namespace

TEST_CASE("C1 identity map") {
  const auto start = Clock::now();
  const DiskMap f(raw_correspondence(fixtures::circle(), 8, 256), MapOptions{512, 256, 5e-3});
  const std::vector<cplx> pts = disk_points(200, 0.9, 1);
  const GridResult g = map_grid(f, pts);
  const double elapsed = seconds_since(start);
  double err = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) err = std::max(err, std::abs(g.values[i] - pts[i]));
  const bool pass = g.errors.empty() && err <= 1e-9 && elapsed < 1.0;
  std::ostringstream d;
  d << "identity map: max|f-zeta| = " << err << " (<= 1e-9), runtime " << elapsed << " s (< 1 s)";
  report("C1", pass, d.str());
  CHECK(g.errors.empty());
  CHECK(err <= 1e-9);
  CHECK(elapsed < 1.0);
}

TEST_CASE("C2 scaled and rotated circles") {
  double worst_mod = 0.0, worst_map = 0.0;
  bool windings = true;
  for (double r : {0.5, 2.0, 3.7}) {
    for (double c : {0.0, 1.0, -2.5}) {
      const DiskMap f(raw_correspondence(fixtures::circle(r, c), 8, 256), MapOptions{512, 256, 5e-3});
      for (const cplx z : disk_points(200, 0.9, 2)) {
        const cplx w = f(z);
        worst_mod = std::max(worst_mod, std::abs(std::abs(w) - r * std::abs(z)));
        worst_map = std::max(worst_map, std::abs(w - r * z));
      }
      windings = windings && verify(DiskMap(raw_correspondence(fixtures::circle(r, c), 8, 256))).winding == 1;
    }
  }
  const bool pass = worst_mod <= 1e-9 && windings;
  std::ostringstream d;
  d << "scaled/rotated circles: max||f|-r|zeta|| = " << worst_mod << " (<= 1e-9), winding 1: "
    << (windings ? "yes" : "no") << "; max|f - r zeta| = " << worst_map;
  report("C2", pass, d.str());
  CHECK(worst_mod <= 1e-9);
  CHECK(windings);
}

TEST_CASE("C3 assembly oracle and speedup") {
  const TrigBoundary b = fixtures::example3();
  const LinearSystem fast8 = assemble_system(b, 8, 256);
  const LinearSystem slow8 = assemble_system_naive(b, 8, 256);
  const double gap = std::max((fast8.matrix - slow8.matrix).cwiseAbs().maxCoeff(),
                              (fast8.rhs - slow8.rhs).cwiseAbs().maxCoeff());

  const KernelGrid grid = fill_kernel_grid(b, 1024);
  auto t0 = Clock::now();
  const LinearSystem fast = assemble_system(grid, 64);
  const double t_fast = seconds_since(t0);
  t0 = Clock::now();
  const LinearSystem slow = assemble_system_naive(grid, 64);
  const double t_slow = seconds_since(t0);
  const double gap64 = (fast.matrix - slow.matrix).cwiseAbs().maxCoeff();
  const double ratio = t_fast / t_slow;

  const bool pass = gap <= 1e-10 && ratio <= 1.0 / 20.0;
  std::ostringstream d;
  d << "assembly: entrywise gap (M=8, N=256) = " << gap << " (<= 1e-10); N=1024, M=64: fast "
    << t_fast << " s, naive " << t_slow << " s, ratio " << ratio << " (<= 0.05), gap " << gap64;
  report("C3", pass, d.str());
  CHECK(gap <= 1e-10);
  CHECK(ratio <= 1.0 / 20.0);
}

TEST_CASE("C4 conjugate-function oracle") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 16);
  const int nodes = 8192;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    RealFourier g;
    g.a0 = u(rng);
    const int d = deg(rng);
    for (int l = 0; l < d; ++l) {
      g.cos_coeffs.push_back(u(rng));
      g.sin_coeffs.push_back(u(rng));
    }
    const RealFourier h = hilbert_conjugate(g);
    for (int k = 0; k < 8; ++k) {
      const double t = kTwoPi * u(rng);
      double pv = 0.0;
      for (int j = 0; j < nodes; ++j) {
        const double tau = t + kTwoPi * (j + 0.5) / nodes;
        pv += g(tau) / std::tan((t - tau) / 2.0);
      }
      worst = std::max(worst, std::abs(h(t) - pv / nodes));
    }
  }
  std::ostringstream d;
  d << "conjugate function: max deviation from symmetric-node PV quadrature over 50 series = "
    << worst << " (<= 1e-8)";
  report("C4", worst <= 1e-8, d.str());
  CHECK(worst <= 1e-8);
}

TEST_CASE("C5 example-3 end to end") {
  const auto start = Clock::now();
  const DiskMap f(raw_correspondence(fixtures::example3(), 64, 1024));
  const MapReport r = verify(f);
  const double haus = level_circle_hausdorff(f, 0.99);
  const double elapsed = seconds_since(start);
  const double haus_995 = level_circle_hausdorff(f, 0.995);
  // Lower bound valid for the exact map: dist(f(zeta), boundary) >= (1/4)(1 - |zeta|^2)|f'(zeta)|.
  double max_df = 0.0;
  for (int j = 0; j < 2048; ++j) {
    const cplx z = std::polar(0.99, kTwoPi * j / 2048);
    const double h = 1e-5;
    max_df = std::max(max_df, std::abs((f(z + h) - f(z - h)) / (2 * h)));
  }
  const double koebe = 0.25 * (1 - 0.99 * 0.99) * max_df;
  const DiskMap disk(raw_correspondence(fixtures::circle(), 8, 256));
  const double haus_disk = level_circle_hausdorff(disk, 0.99);
  const bool pass = r.winding == 1 && r.f0_abs <= 1e-3 && haus <= 5e-3 && elapsed < 10.0;
  std::ostringstream d;
  d << "example 3 (M=64, N=1024): winding " << r.winding << ", |f(0)| = " << r.f0_abs
    << " (<= 1e-3), Hausdorff(|zeta|=0.99) = " << haus << " (<= 5e-3; at 0.995: " << haus_995
    << "; Koebe lower bound " << koebe << " from max|f'| = " << max_df
    << "; unit disk at 0.99: " << haus_disk << "), runtime " << elapsed << " s (< 10 s)";
  report("C5", pass, d.str());
  CHECK(r.winding == 1);
  CHECK(r.f0_abs <= 1e-3);
  CHECK(elapsed < 10.0);
  CHECK(haus <= 5e-3);
}

TEST_CASE("C6 semidisk fold reproduction and repair") {
  const std::filesystem::path config = std::filesystem::path(CONFMAP_DATA_DIR) / "semidisk.json";
  std::ostringstream log, err;

  app::RunConfig raw_cfg = app::load_config(config);
  raw_cfg.correct = false;
  raw_cfg.out_dir = scratch_dir("semidisk_raw");
  const int solve_raw_rc = app::cmd_solve(raw_cfg, log, err);
  const int verify_raw_rc = app::cmd_verify(raw_cfg, std::nullopt, log, err);

  const TrigBoundary& semidisk = raw_cfg.boundary->boundary;
  const app::Pipeline raw =
      app::build_pipeline(raw_cfg, solve(assemble_system(semidisk, raw_cfg.M, raw_cfg.N)));
  const AngleFunction raw_theta = angle_function(*raw.raw);
  std::vector<double> near;
  for (const app::CornerOutcome& c : raw.corners) near.push_back(min_step_near(raw_theta, c.corner.t0, 0.3));
  bool folds_at_all = near.size() == 2;
  for (double s : near) folds_at_all = folds_at_all && s < 0.0;

  std::ostringstream d;
  d << "semidisk: uncorrected verify exit " << verify_raw_rc << " (solve exit " << solve_raw_rc
    << "), min step near corners [";
  for (std::size_t i = 0; i < near.size(); ++i) d << (i ? ", " : "") << near[i];
  d << "]";
  bool pass = verify_raw_rc == 4 && folds_at_all;
  CHECK(verify_raw_rc == 4);
  CHECK(folds_at_all);

  for (SplineKind kind : {SplineKind::Cubic, SplineKind::Linear}) {
    app::RunConfig cfg = app::load_config(config);
    cfg.spline = kind;
    cfg.out_dir = scratch_dir("semidisk_" + to_string(kind));
    const int solve_rc = app::cmd_solve(cfg, log, err);
    const int verify_rc = app::cmd_verify(cfg, std::nullopt, log, err);
    const app::Pipeline p = app::build_pipeline(cfg, raw.raw->solution());
    const DiskMap f(p.correspondence, cfg.map);
    const MapReport r = verify(f);
    std::vector<double> centres;
    for (const MonotoneSpline& s : p.correspondence->segments()) centres.push_back(s.theta_star());
    const double dev = boundary_deviation(f, 1.0 - cfg.map.delta_rim, 1024, centres, 0.1);
    const bool ok = solve_rc == 0 && verify_rc == 0 && p.monotonicity.monotone() &&
                    std::abs(p.monotonicity.increment - kTwoPi) <= 1e-9 && r.winding == 1 &&
                    dev <= 2e-2 && centres.size() == 2;
    d << "; " << to_string(kind) << ": segments " << centres.size() << ", min step "
      << p.monotonicity.min_step << ", increment-2pi " << p.monotonicity.increment - kTwoPi
      << ", winding " << r.winding << ", deviation off corners " << dev << " (<= 2e-2)";
    pass = pass && ok;
    CHECK(solve_rc == 0);
    CHECK(verify_rc == 0);
    CHECK(p.monotonicity.monotone());
    CHECK(std::abs(p.monotonicity.increment - kTwoPi) <= 1e-9);
    CHECK(r.winding == 1);
    CHECK(dev <= 2e-2);
    CHECK(centres.size() == 2u);
  }
  report("C6", pass, d.str());
}

TEST_CASE("C7 corner zero slope") {
  const auto raw = fixtures::solve_raw(fixtures::semidisk(), 16, 256);
  const AngleFunction theta = angle_function(*raw);
  int corners = 0;
  bool exact = true;
  for (const AnglePoint& c : detect_corners(raw->boundary(), 0.2, 2 * kTwoPi / 256)) {
    const std::optional<CornerCorrection> fix = correct_corner(theta, c.t0, SplineKind::Cubic);
    if (!fix) continue;
    ++corners;
    const MonotoneSpline& s = fix->spline;
    exact = exact && s.left()[1] == 0.0 && s.right()[1] == 0.0 && s.slope(s.t0()) == 0.0;
  }
  std::ostringstream d;
  d << "cubic corrections on the semidisk: " << corners
    << " corners, phi'(t0) == 0 exactly in both pieces: " << (exact ? "yes" : "no");
  report("C7", exact && corners == 2, d.str());
  CHECK(corners == 2);
  CHECK(exact);
}

TEST_CASE("C8 truncation stability") {
  const TrigBoundary b = fixtures::ellipse();
  const FredholmSolution s16 = solve(assemble_system(b, 16, 512));
  const FredholmSolution s32 = solve(assemble_system(b, 32, 512));
  double gap = 0.0;
  for (int l = 0; l < 16; ++l) {
    gap = std::max({gap, std::abs(s16.alpha[l] - s32.alpha[l]), std::abs(s16.beta[l] - s32.beta[l])});
  }
  const bool pass = gap <= 1e-8 && s32.residual_norm <= 1e-8;
  std::ostringstream d;
  d << "ellipse: max harmonic gap M=16 vs M=32 = " << gap << " (<= 1e-8), residual M=32 = "
    << s32.residual_norm << " (<= 1e-8)";
  report("C8", pass, d.str());
  CHECK(gap <= 1e-8);
  CHECK(s32.residual_norm <= 1e-8);
}
