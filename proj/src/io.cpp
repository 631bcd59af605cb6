#include "confmap/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "confmap/error.hpp"

namespace confmap::io {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::Config, "io", msg); }

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) bad(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    bad(std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) bad(std::string("missing array field '") + key + "'");
  std::vector<double> v;
  for (const json& x : j.at(key)) {
    if (!x.is_number()) bad(std::string("non-numeric entry in '") + key + "'");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<cplx> parse_point_array(const json& arr) {
  if (!arr.is_array()) bad("'samples' must be an array of [x, y] pairs");
  std::vector<cplx> pts;
  pts.reserve(arr.size());
  for (const json& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      bad("each sample must be an [x, y] pair");
    }
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return pts;
}

std::vector<cplx> parse_csv_pairs(std::istream& in, const std::string& what) {
  std::vector<cplx> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x = 0.0, y = 0.0;
    if (!(ls >> x >> y)) {
      if (pts.empty() && lineno == 1) continue;  // header row
      bad(what + ": cannot parse line " + std::to_string(lineno));
    }
    pts.emplace_back(x, y);
  }
  return pts;
}

}  // namespace

std::vector<AnglePoint> parse_corners(const json& j) {
  if (!j.is_array()) bad("'corners' must be an array or \"auto\"");
  std::vector<AnglePoint> corners;
  for (const json& c : j) {
    AnglePoint a{number(c, "t0"), number(c, "lambda")};
    if (!(a.lambda > 0.0)) bad("corner lambda must be positive");
    a.t0 = wrap_parameter(a.t0);
    corners.push_back(a);
  }
  return corners;
}

BoundarySpec parse_boundary_spec(const json& j) {
  if (!j.is_object()) bad("boundary spec must be a JSON object");
  std::vector<AnglePoint> corners;
  if (j.contains("corners")) corners = parse_corners(j.at("corners"));

  if (j.contains("coeffs")) {
    std::vector<std::pair<int, cplx>> terms;
    for (const json& c : j.at("coeffs")) {
      terms.emplace_back(integer(c, "k"), cplx(number(c, "re"), c.value("im", 0.0)));
    }
    if (terms.empty()) bad("'coeffs' is empty");
    return {TrigBoundary::from_terms(terms), std::move(corners), std::nullopt, 0};
  }
  if (j.contains("samples")) {
    const std::vector<cplx> pts = parse_point_array(j.at("samples"));
    FitResult fit = fit_from_samples(pts, integer(j, "m"), integer(j, "n"));
    return {std::move(fit.boundary), std::move(corners), fit.residual, static_cast<int>(pts.size())};
  }
  bad("boundary spec needs 'coeffs' or 'samples'");
}

json boundary_to_json(const TrigBoundary& b, std::span<const AnglePoint> corners,
                      std::optional<double> fit_residual) {
  json j;
  j["coeffs"] = json::array();
  for (int k = -b.m(); k <= b.n(); ++k) {
    const cplx d = b.coeff(k);
    j["coeffs"].push_back({{"k", k}, {"re", d.real()}, {"im", d.imag()}});
  }
  if (!corners.empty()) {
    j["corners"] = json::array();
    for (const AnglePoint& c : corners) j["corners"].push_back({{"t0", c.t0}, {"lambda", c.lambda}});
  }
  if (fit_residual) j["fit_residual"] = *fit_residual;
  return j;
}

json solution_to_json(const FredholmSolution& s) {
  return {{"M", s.M}, {"alpha", s.alpha}, {"beta", s.beta}, {"residual", s.residual_norm}};
}

FredholmSolution solution_from_json(const json& j) {
  FredholmSolution s;
  s.M = integer(j, "M");
  s.alpha = numbers(j, "alpha");
  s.beta = numbers(j, "beta");
  s.residual_norm = number(j, "residual");
  if (s.M < 1 || s.alpha.size() != static_cast<std::size_t>(s.M) ||
      s.beta.size() != static_cast<std::size_t>(s.M)) {
    bad("solution vectors must have length M");
  }
  return s;
}

json report_to_json(const MapReport& r) {
  return {{"f0_abs", r.f0_abs},
          {"boundary_dev", r.boundary_dev},
          {"winding", r.winding},
          {"cr_residual", r.cr_residual}};
}

json correction_to_json(const CornerCorrection& c) {
  const MonotoneSpline& s = c.spline;
  return {{"t0", s.t0()},          {"eps1", s.eps1()},
          {"eps2", s.eps2()},      {"kind", to_string(s.kind())},
          {"theta_star", s.theta_star()}, {"retries", c.retries}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << text;
  if (!out) bad("write failed for " + path.string());
}

std::vector<cplx> read_samples_file(const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    const json j = read_json_file(path);
    if (!j.contains("samples")) bad(path.string() + ": missing 'samples'");
    return parse_point_array(j.at("samples"));
  }
  return read_points_csv(path);
}

std::vector<cplx> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  return parse_csv_pairs(in, path.string());
}

void write_grid_csv(std::ostream& os, std::span<const cplx> zeta, std::span<const cplx> f) {
  os << "re_zeta,im_zeta,re_f,im_f\n" << std::setprecision(17);
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    os << zeta[i].real() << ',' << zeta[i].imag() << ',' << f[i].real() << ',' << f[i].imag()
       << '\n';
  }
}

void write_level_lines_csv(std::ostream& os, std::span<const LevelLine> lines) {
  os << "family,index,parameter,re_zeta,im_zeta,re_f,im_f\n" << std::setprecision(17);
  for (const LevelLine& l : lines) {
    for (std::size_t i = 0; i < l.zeta.size(); ++i) {
      os << l.family << ',' << l.index << ',' << l.parameter << ',' << l.zeta[i].real() << ','
         << l.zeta[i].imag() << ',' << l.image[i].real() << ',' << l.image[i].imag() << '\n';
    }
  }
}

void write_kernel_csv(std::ostream& os, const KernelGrid& grid) {
  os << "kind,i,j,value\n" << std::setprecision(17);
  for (int a = 0; a < grid.N; ++a) {
    for (int b = 0; b < grid.N; ++b) os << "K," << a << ',' << b << ',' << grid.k(a, b) << '\n';
  }
  for (int j = 0; j < grid.N; ++j) os << "P," << j << ",-1," << grid.P[j] << '\n';
}

}  // namespace confmap::io
