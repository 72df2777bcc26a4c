#include <iostream>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "fracbvp/version.hpp"

int main(int argc, char** argv) {
  using namespace fracbvp::cli;

  CLI::App app{"Green's-function solver and certificate checker for three-point fractional BVPs"};
  app.set_version_flag("--version", std::string(fracbvp::kVersion));
  app.require_subcommand(1);

  CommandOptions options;
  std::size_t grid = 0, max_iter = 0;
  double tol = 0.0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--grid", grid, "override solver.grid_size (even, >= 64)");
    cmd->add_option("--tol", tol, "override solver.tol (squared sup-norm scale)");
    cmd->add_option("--max-iter", max_iter, "override solver.max_iter");
    cmd->add_flag("--json", options.json, "structured report");
  };

  std::string config, output;
  std::size_t resolution = 0;

  auto* check = app.add_subcommand("check", "print the certificate table for a problem file");
  check->add_option("config", config, "problem file")->required();
  add_common(check);

  auto* solve = app.add_subcommand("solve", "Picard-solve and write t,u CSV plus a sidecar report");
  solve->add_option("config", config, "problem file")->required();
  solve->add_option("-o,--output", output, "CSV path")->required();
  add_common(solve);

  auto* green = app.add_subcommand("green", "tabulate G(t,s) on a uniform grid");
  green->add_option("config", config, "problem file")->required();
  green->add_option("-o,--output", output, "CSV path")->required();
  green->add_option("--resolution", resolution, "points per axis (>= 2)")->required();
  add_common(green);

  auto* verify = app.add_subcommand("verify-paper", "recompute the constants of the two bundled examples");
  verify->add_flag("--json", options.json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (!verify->parsed()) {
    auto* active = app.get_subcommands().front();
    if (active->count("--grid")) options.overrides.grid_size = grid;
    if (active->count("--tol")) options.overrides.tol = tol;
    if (active->count("--max-iter")) options.overrides.max_iter = max_iter;
  }

  if (check->parsed()) return cmd_check(config, options, std::cout, std::cerr);
  if (solve->parsed()) return cmd_solve(config, output, options, std::cout, std::cerr);
  if (green->parsed()) return cmd_green(config, output, resolution, options, std::cout, std::cerr);
  return cmd_verify_paper(options, std::cout, std::cerr);
}
