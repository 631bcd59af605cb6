#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "confmap/app.hpp"
#include "confmap/error.hpp"

namespace {

using confmap::app::ConfigOverrides;

void add_overrides(CLI::App* cmd, ConfigOverrides& o) {
  cmd->add_option("--M", o.M, "truncation order");
  cmd->add_option("--N", o.N, "kernel grid size (power of two)");
  cmd->add_option("--Nq", o.Nq, "Cauchy quadrature nodes");
  cmd->add_option("--Nq-spline", o.Nq_spline, "quadrature nodes per spline segment");
  cmd->add_option("--spline", o.spline, "corner spline kind")
      ->check(CLI::IsMember({"linear", "cubic"}));
  cmd->add_option("--slope-floor", o.slope_floor, "fold detection slope floor");
  cmd->add_option("--delta-rim", o.delta_rim, "trusted region is |zeta| <= 1 - delta");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_flag("--no-correct", o.no_correct, "skip corner correction");
}

int run_with_config(const std::string& path, const ConfigOverrides& o,
                    const std::function<int(const confmap::app::RunConfig&)>& body) {
  try {
    confmap::app::RunConfig c = confmap::app::load_config(path);
    confmap::app::apply_overrides(c, o);
    return body(c);
  } catch (const confmap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return confmap::exit_code(e.kind());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate conformal maps of the unit disk onto trigonometric-polynomial domains"};
  app.require_subcommand(1);

  std::string samples, fit_out = "boundary.json";
  int fit_m = 0, fit_n = 1;
  auto* fit = app.add_subcommand("fit-boundary", "fit a trigonometric polynomial to boundary samples");
  fit->add_option("samples", samples, "samples file (JSON {\"samples\": [[x, y], ...]} or CSV x,y)")
      ->required();
  fit->add_option("--m", fit_m, "negative-index extent")->required();
  fit->add_option("--n", fit_n, "positive-index extent")->required();
  fit->add_option("--out", fit_out, "output boundary spec");

  std::string config;
  std::optional<std::string> solution;
  ConfigOverrides over;

  auto* solve = app.add_subcommand("solve", "solve for the boundary correspondence");
  solve->add_option("config", config, "run config JSON")->required();
  add_overrides(solve, over);
  solve->add_flag("--dump-kernel", over.dump_kernel, "write the kernel grid as CSV");

  auto* map = app.add_subcommand("map", "evaluate the map on a grid and level lines");
  map->add_option("config", config, "run config JSON")->required();
  map->add_option("--solution", solution, "solution JSON (default <out-dir>/solution.json)");
  add_overrides(map, over);

  auto* verify = app.add_subcommand("verify", "check the map and the correspondence");
  verify->add_option("config", config, "run config JSON")->required();
  verify->add_option("--solution", solution, "solution JSON (default <out-dir>/solution.json)");
  add_overrides(verify, over);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : confmap::exit_code(confmap::ErrorKind::Config);
  }

  std::optional<std::filesystem::path> sol_path;
  if (solution) sol_path = *solution;

  if (fit->parsed()) {
    return confmap::app::cmd_fit_boundary(samples, fit_m, fit_n, fit_out, std::cout, std::cerr);
  }
  if (solve->parsed()) {
    return run_with_config(config, over, [](const auto& c) {
      return confmap::app::cmd_solve(c, std::cout, std::cerr);
    });
  }
  if (map->parsed()) {
    return run_with_config(config, over, [&](const auto& c) {
      return confmap::app::cmd_map(c, sol_path, std::cout, std::cerr);
    });
  }
  return run_with_config(config, over, [&](const auto& c) {
    return confmap::app::cmd_verify(c, sol_path, std::cout, std::cerr);
  });
}
