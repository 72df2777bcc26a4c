#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracbvp/solver.hpp"

namespace fracbvp::cli {

enum class RunMode { uniqueness, positive_existence, solve_only };

std::string_view to_string(RunMode mode);

struct FunctionSource {
  std::string kind;  // example41 | example42 | zero | expression
  std::string expr;  // only for kind = expression
};

/// One problem file. Sections and keys:
///   [problem] alpha, beta, eta          numbers or constant expressions ("1/3")
///   [phi]     kind, table               table = CSV path with columns t,phi
///   [f]       kind, expr, domain        domain = real | nonnegative
///   [g]       kind, expr                optional Lipschitz envelope
///   [solver]  grid_size, tol, max_iter, mode
struct Config {
  std::filesystem::path source;
  double alpha = 0.0, beta = 0.0, eta = 0.0;
  PhiKind phi_kind = PhiKind::identity;
  std::filesystem::path phi_table;  // resolved against the config's directory
  FunctionSource f;
  std::optional<FunctionSource> g;
  std::optional<FDomain> f_domain;
  std::size_t grid_size = QuadratureGrid::kDefaultSize;
  double tol = kDefaultTolerance;
  std::size_t max_iter = kDefaultMaxIter;
  RunMode mode = RunMode::uniqueness;
  /// Every accepted "section.key = value" in file order, for report provenance.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Throws ConfigError naming the offending section and key.
Config parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
Config load_config(const std::filesystem::path& path);

struct Overrides {
  std::optional<std::size_t> grid_size = std::nullopt;
  std::optional<double> tol = std::nullopt;
  std::optional<std::size_t> max_iter = std::nullopt;
};

/// Applies command-line overrides with the same validation as the file keys.
void apply_overrides(Config& config, const Overrides& overrides);

/// Builds phi (reading the table file when needed), f, g and the parameter set.
ProblemSpec build_problem(const Config& config);

}  // namespace fracbvp::cli
