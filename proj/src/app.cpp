#include "confmap/app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "confmap/error.hpp"

namespace confmap::app {
namespace {

namespace fs = std::filesystem;
using io::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::Config, "cli", msg); }

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    err << "error: [io] " << e.what() << '\n';
    return exit_code(ErrorKind::Config);
  } catch (const fs::filesystem_error& e) {
    err << "error: [io] " << e.what() << '\n';
    return exit_code(ErrorKind::Config);
  }
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("config field '") + key + "' has the wrong type");
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) { return p.is_absolute() ? p : base / p; }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) bad("unknown field '" + key + "' in " + where);
  }
}

const TrigBoundary& boundary_of(const RunConfig& c) {
  if (!c.boundary) bad("config has no boundary");
  return c.boundary->boundary;
}

FredholmSolution load_solution(const RunConfig& c, const std::optional<fs::path>& path) {
  const fs::path p = path ? *path : c.out_dir / "solution.json";
  if (!fs::exists(p)) bad("solution file " + p.string() + " not found; run 'solve' first");
  FredholmSolution s = io::solution_from_json(io::read_json_file(p));
  if (s.M != c.M) {
    bad("solution has M=" + std::to_string(s.M) + " but the config requests M=" +
        std::to_string(c.M));
  }
  return s;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<cplx> grid_points(const RunConfig& c) {
  if (!c.grid.points_file.empty()) return io::read_points_csv(c.grid.points_file);
  std::vector<cplx> pts;
  for (const double r : c.grid.radii) {
    for (int j = 0; j < c.grid.angles; ++j) pts.push_back(std::polar(r, kTwoPi * j / c.grid.angles));
  }
  return pts;
}

}  // namespace

RunConfig parse_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) bad("config must be a JSON object");
  check_keys(j,
             {"boundary", "M", "N", "Nq", "Nq_spline", "delta_rim", "corners", "spline",
              "slope_floor", "corner_threshold", "correct", "f0_threshold", "out_dir", "grid",
              "level_lines", "dump_kernel"},
             "config");
  RunConfig c;
  if (j.contains("boundary")) {
    const json& b = j.at("boundary");
    if (b.is_string()) {
      c.boundary = io::parse_boundary_spec(io::read_json_file(resolve(b.get<std::string>(), base_dir)));
    } else {
      c.boundary = io::parse_boundary_spec(b);
    }
  }
  if (j.contains("M")) c.M = get_as<int>(j, "M");
  if (j.contains("N")) c.N = get_as<int>(j, "N");
  if (j.contains("Nq")) c.map.Nq = get_as<int>(j, "Nq");
  if (j.contains("Nq_spline")) c.map.Nq_spline = get_as<int>(j, "Nq_spline");
  if (j.contains("delta_rim")) c.map.delta_rim = get_as<double>(j, "delta_rim");
  if (j.contains("spline")) c.spline = parse_spline_kind(get_as<std::string>(j, "spline"));
  if (j.contains("slope_floor")) c.slope_floor = get_as<double>(j, "slope_floor");
  if (j.contains("corner_threshold")) c.corner_threshold = get_as<double>(j, "corner_threshold");
  if (j.contains("correct")) c.correct = get_as<bool>(j, "correct");
  if (j.contains("f0_threshold")) c.f0_threshold = get_as<double>(j, "f0_threshold");
  if (j.contains("dump_kernel")) c.dump_kernel = get_as<bool>(j, "dump_kernel");
  if (j.contains("out_dir")) c.out_dir = resolve(get_as<std::string>(j, "out_dir"), base_dir);

  if (j.contains("corners")) {
    const json& cj = j.at("corners");
    if (cj.is_string()) {
      if (cj.get<std::string>() != "auto") bad("'corners' must be \"auto\" or a list");
      c.auto_corners = true;
    } else {
      c.auto_corners = false;
      const std::vector<AnglePoint> pts = io::parse_corners(cj);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CornerRequest r{pts[i], std::nullopt};
        if (cj[i].contains("spline")) r.kind = parse_spline_kind(cj[i].at("spline").get<std::string>());
        c.corners.push_back(r);
      }
    }
  } else if (c.boundary && !c.boundary->corners.empty()) {
    c.auto_corners = false;
    for (const AnglePoint& p : c.boundary->corners) c.corners.push_back({p, std::nullopt});
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, {"radii", "angles", "points"}, "grid");
    if (g.contains("radii")) c.grid.radii = get_as<std::vector<double>>(g, "radii");
    if (g.contains("angles")) c.grid.angles = get_as<int>(g, "angles");
    if (g.contains("points")) c.grid.points_file = resolve(get_as<std::string>(g, "points"), base_dir);
  }
  if (j.contains("level_lines")) {
    const json& l = j.at("level_lines");
    check_keys(l, {"radii", "rays", "samples"}, "level_lines");
    if (l.contains("radii")) c.levels.radii = get_as<std::vector<double>>(l, "radii");
    if (l.contains("rays")) c.levels.rays = get_as<int>(l, "rays");
    if (l.contains("samples")) c.levels.samples = get_as<int>(l, "samples");
  }
  return c;
}

RunConfig load_config(const fs::path& path) {
  return parse_config(io::read_json_file(path), path.has_parent_path() ? path.parent_path() : ".");
}

void validate(const RunConfig& c) {
  if (!c.boundary) bad("config has no boundary");
  if (c.M < 1 || c.N < 1) bad("M and N must be positive");
  if (c.M > c.N / 4) {
    bad("M=" + std::to_string(c.M) + " exceeds N/4=" + std::to_string(c.N / 4));
  }
  if (c.map.Nq < 8 || c.map.Nq_spline < 2) bad("Nq must be >= 8 and Nq_spline >= 2");
  if (!(c.map.delta_rim > 0.0 && c.map.delta_rim < 1.0)) bad("delta_rim must lie in (0, 1)");
  if (!(c.slope_floor > 0.0)) bad("slope_floor must be positive");
  if (!(c.corner_threshold > 0.0)) bad("corner_threshold must be positive");
  if (!(c.f0_threshold > 0.0)) bad("f0_threshold must be positive");
  if (c.grid.angles < 1 || c.levels.rays < 0 || c.levels.samples < 2) {
    bad("grid angles, level-line rays and samples must be positive");
  }
}

void apply_overrides(RunConfig& c, const ConfigOverrides& o) {
  if (o.M) c.M = *o.M;
  if (o.N) c.N = *o.N;
  if (o.Nq) c.map.Nq = *o.Nq;
  if (o.Nq_spline) c.map.Nq_spline = *o.Nq_spline;
  if (o.spline) c.spline = parse_spline_kind(*o.spline);
  if (o.slope_floor) c.slope_floor = *o.slope_floor;
  if (o.delta_rim) c.map.delta_rim = *o.delta_rim;
  if (o.out_dir) c.out_dir = *o.out_dir;
  if (o.no_correct) c.correct = false;
  if (o.dump_kernel) c.dump_kernel = true;
}

std::vector<CornerRequest> resolve_corners(const RunConfig& c) {
  if (!c.auto_corners) return c.corners;
  const int samples = c.boundary && c.boundary->sample_count > 0 ? c.boundary->sample_count : 256;
  std::vector<CornerRequest> out;
  for (const AnglePoint& p : detect_corners(boundary_of(c), c.corner_threshold, 2.0 * kTwoPi / samples)) {
    out.push_back({p, std::nullopt});
  }
  return out;
}

Pipeline build_pipeline(const RunConfig& c, FredholmSolution solution) {
  Pipeline p;
  p.raw = std::make_shared<RawCorrespondence>(boundary_of(c), std::move(solution));
  const AngleFunction theta = angle_function(*p.raw);
  FoldOptions fold;
  fold.slope_floor = c.slope_floor;

  std::vector<MonotoneSpline> segments;
  for (const CornerRequest& r : resolve_corners(c)) {
    CornerOutcome out{r.point, r.kind.value_or(c.spline), std::nullopt, ""};
    if (!c.correct) {
      out.status = "correction disabled";
    } else if (r.point.lambda >= 1.0) {
      out.status = "obtuse";
    } else {
      out.correction = correct_corner(theta, r.point.t0, out.kind, fold);
      out.status = out.correction ? "corrected" : "no fold";
      if (out.correction) segments.push_back(out.correction->spline);
    }
    p.corners.push_back(std::move(out));
  }
  p.correspondence = segments.empty()
                         ? std::make_shared<BoundaryCorrespondence>(p.raw)
                         : std::make_shared<BoundaryCorrespondence>(p.raw, std::move(segments));
  p.monotonicity = check_monotone(p.correspondence->as_function());
  return p;
}

json corrections_to_json(const Pipeline& p) {
  json j;
  j["corrections"] = json::array();
  j["skipped"] = json::array();
  for (const CornerOutcome& o : p.corners) {
    if (o.correction) {
      json e = io::correction_to_json(*o.correction);
      e["lambda"] = o.corner.lambda;
      j["corrections"].push_back(e);
    } else {
      j["skipped"].push_back({{"t0", o.corner.t0}, {"lambda", o.corner.lambda}, {"reason", o.status}});
    }
  }
  j["status"] = j["corrections"].empty() ? "no fold" : "corrected";
  j["monotone"] = p.monotonicity.monotone();
  j["min_step"] = p.monotonicity.min_step;
  j["increment"] = p.monotonicity.increment;
  return j;
}

int cmd_fit_boundary(const fs::path& samples, int m, int n, const fs::path& out, std::ostream& log,
                     std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<cplx> pts = io::read_samples_file(samples);
    const FitResult fit = fit_from_samples(pts, m, n);
    io::write_text_file(out, dump(io::boundary_to_json(fit.boundary, {}, fit.residual)));
    log << "fitted " << pts.size() << " samples with m=" << m << ", n=" << n << '\n'
        << "residual " << std::setprecision(6) << std::scientific << fit.residual << '\n'
        << "wrote " << out.string() << '\n';
    return 0;
  });
}

int cmd_solve(const RunConfig& c, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    validate(c);
    const TrigBoundary& b = boundary_of(c);
    const auto start = std::chrono::steady_clock::now();
    const LinearSystem sys = assemble_system(b, c.M, c.N);
    const FredholmSolution sol = solve(sys);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    io::write_text_file(c.out_dir / "solution.json", dump(io::solution_to_json(sol)));
    if (c.dump_kernel) {
      std::ostringstream csv;
      io::write_kernel_csv(csv, sys.grid);
      io::write_text_file(c.out_dir / "kernel.csv", csv.str());
    }
    const Pipeline p = build_pipeline(c, sol);
    io::write_text_file(c.out_dir / "corrections.json", dump(corrections_to_json(p)));

    log << std::setprecision(6) << std::scientific << "solved M=" << c.M << ", N=" << c.N
        << " in " << std::fixed << seconds << " s, residual " << std::scientific
        << sol.residual_norm << ", condition " << sol.condition << '\n';
    for (const CornerOutcome& o : p.corners) {
      log << "corner t0=" << std::fixed << o.corner.t0 << " lambda=" << o.corner.lambda << ": "
          << o.status;
      if (o.correction) {
        log << " (" << to_string(o.kind) << ", eps1=" << o.correction->spline.eps1()
            << ", eps2=" << o.correction->spline.eps2() << ", retries=" << o.correction->retries
            << ")";
      }
      log << '\n';
    }
    if (p.corners.empty()) log << "no corners: no fold\n";
    log << "wrote " << (c.out_dir / "solution.json").string() << ", "
        << (c.out_dir / "corrections.json").string() << '\n';
    if (!p.monotonicity.monotone()) {
      err << "error: [corrector] boundary correspondence is not monotone (min step "
          << std::scientific << p.monotonicity.min_step << " at t=" << std::fixed
          << p.monotonicity.worst_t << ")\n";
      return exit_code(ErrorKind::Invariant);
    }
    return 0;
  });
}

int cmd_map(const RunConfig& c, const std::optional<fs::path>& solution, std::ostream& log,
            std::ostream& err) {
  return guarded(err, [&] {
    validate(c);
    const Pipeline p = build_pipeline(c, load_solution(c, solution));
    const DiskMap map(p.correspondence, c.map);

    const std::vector<cplx> pts = grid_points(c);
    const GridResult g = map_grid(map, pts);
    std::ostringstream grid_csv;
    io::write_grid_csv(grid_csv, pts, g.values);
    io::write_text_file(c.out_dir / "grid.csv", grid_csv.str());

    std::vector<double> radii;
    for (const double r : c.levels.radii) {
      if (r <= 1.0 - c.map.delta_rim) {
        radii.push_back(r);
      } else {
        err << "warning: level line |zeta|=" << r << " is outside the trusted region, skipped\n";
      }
    }
    const std::vector<LevelLine> lines = level_lines(map, radii, c.levels.rays, c.levels.samples);
    std::ostringstream lines_csv;
    io::write_level_lines_csv(lines_csv, lines);
    io::write_text_file(c.out_dir / "level_lines.csv", lines_csv.str());

    const MapReport rep = verify(map);
    io::write_text_file(c.out_dir / "report.json", dump(io::report_to_json(rep)));

    log << "mapped " << pts.size() << " points, " << lines.size() << " level lines\n"
        << std::scientific << std::setprecision(6) << "f0_abs " << rep.f0_abs
        << ", boundary_dev " << rep.boundary_dev << ", winding " << rep.winding
        << ", cr_residual " << rep.cr_residual << '\n';

    if (!g.errors.empty()) {
      json errs = json::array();
      for (const PointError& e : g.errors) {
        errs.push_back({{"index", e.index}, {"message", e.message}});
        err << "error: point " << e.index << ": " << e.message << '\n';
      }
      io::write_text_file(c.out_dir / "map_errors.json", dump(errs));
      return exit_code(ErrorKind::Config);
    }
    if (rep.winding != 1 || !(rep.f0_abs <= c.f0_threshold)) {
      err << "error: [mapper] winding " << rep.winding << ", |f(0)| " << rep.f0_abs
          << " (threshold " << c.f0_threshold << ")\n";
      return exit_code(ErrorKind::Invariant);
    }
    return 0;
  });
}

int cmd_verify(const RunConfig& c, const std::optional<fs::path>& solution, std::ostream& log,
               std::ostream& err) {
  return guarded(err, [&] {
    validate(c);
    const Pipeline p = build_pipeline(c, load_solution(c, solution));
    const DiskMap map(p.correspondence, c.map);
    const MapReport rep = verify(map);

    const MonotonicityReport& mono = p.monotonicity;
    const bool increment_ok = std::abs(mono.increment - kTwoPi) <= 1e-9;
    const bool winding_ok = rep.winding == 1;
    const bool f0_ok = rep.f0_abs <= c.f0_threshold;

    json j = io::report_to_json(rep);
    j["monotone"] = mono.monotone();
    j["min_step"] = mono.min_step;
    j["worst_t"] = mono.worst_t;
    j["increment"] = mono.increment;
    j["corrected"] = p.correspondence->kind() == BoundaryCorrespondence::Kind::Corrected;
    j["pass"] = mono.monotone() && increment_ok && winding_ok && f0_ok;
    io::write_text_file(c.out_dir / "verify.json", dump(j));
    log << dump(j);

    if (!mono.monotone()) {
      err << "error: [corrector] theta is not monotone: min step " << std::scientific
          << mono.min_step << " at t=" << std::fixed << mono.worst_t << '\n';
    }
    if (!increment_ok) err << "error: [corrector] theta(2pi) - theta(0) = " << mono.increment << '\n';
    if (!winding_ok) err << "error: [mapper] winding number " << rep.winding << '\n';
    if (!f0_ok) err << "error: [mapper] |f(0)| = " << rep.f0_abs << " above threshold\n";
    return j["pass"].get<bool>() ? 0 : exit_code(ErrorKind::Invariant);
  });
}

}  // namespace confmap::app
