#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "expression.hpp"
#include "fracbvp/builtin_problems.hpp"
#include "fracbvp/errors.hpp"

namespace fracbvp::cli {

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::uniqueness: return "uniqueness";
    case RunMode::positive_existence: return "positive-existence";
    case RunMode::solve_only: return "solve-only";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, std::set<std::string>, std::less<>> kSchema = {
    {"problem", {"alpha", "beta", "eta"}},
    {"phi", {"kind", "table"}},
    {"f", {"kind", "expr", "domain"}},
    {"g", {"kind", "expr"}},
    {"solver", {"grid_size", "tol", "max_iter", "mode"}},
};

[[noreturn]] void bad_key(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

double number(const std::string& key, const std::string& value) {
  try {
    const double x = evaluate_constant(value);
    if (!std::isfinite(x)) bad_key(key, "not a finite number");
    return x;
  } catch (const ConfigError& e) {
    if (std::string_view(e.what()).starts_with("config key")) throw;
    bad_key(key, "expected a number, got '" + value + "'");
  }
}

std::size_t count(const std::string& key, const std::string& value) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_key(key, "expected a whole number, got '" + value + "'");
  return n;
}

void check_grid(const std::string& key, std::size_t n) {
  if (n < 64 || n % 2 != 0) bad_key(key, "grid_size must be even and at least 64 (got " + std::to_string(n) + ")");
}

void check_tol(const std::string& key, double tol) {
  if (!(tol > 0.0)) bad_key(key, "tol must be positive");
}

void check_iter(const std::string& key, std::size_t n) {
  if (n == 0) bad_key(key, "max_iter must be at least 1");
}

const std::set<std::string, std::less<>> kFunctionKinds = {"example41", "example42", "zero", "expression"};

}  // namespace

Config parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  Config cfg;
  std::map<std::string, std::string> values;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (const auto semi = line.find(';'); semi != std::string_view::npos) line = line.substr(0, semi);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!kSchema.contains(section)) throw ConfigError("config section '[" + section + "]' is not recognised");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (section.empty()) bad_key(key, "appears before any [section]");
    const std::string full = section + "." + key;
    if (!kSchema.find(section)->second.contains(key)) bad_key(full, "unknown key");
    if (values.contains(full)) bad_key(full, "given twice");
    if (value.empty()) bad_key(full, "empty value");
    values[full] = value;
    cfg.echo.emplace_back(full, value);
  }

  auto require = [&](const std::string& key) -> const std::string& {
    const auto it = values.find(key);
    if (it == values.end()) bad_key(key, "missing");
    return it->second;
  };
  auto optional = [&](const std::string& key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  cfg.alpha = number("problem.alpha", require("problem.alpha"));
  if (!(cfg.alpha > 2.0 && cfg.alpha <= 3.0)) bad_key("problem.alpha", "must satisfy 2 < alpha <= 3");
  cfg.beta = number("problem.beta", require("problem.beta"));
  if (!(cfg.beta >= 0.0)) bad_key("problem.beta", "must be nonnegative");
  cfg.eta = number("problem.eta", require("problem.eta"));
  if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) bad_key("problem.eta", "must satisfy 0 < eta <= 1");

  try {
    cfg.phi_kind = phi_kind_from_string(require("phi.kind"));
  } catch (const ConfigError&) {
    bad_key("phi.kind", "unknown map '" + values["phi.kind"] + "'");
  }
  if (cfg.phi_kind == PhiKind::table) {
    std::filesystem::path p = require("phi.table");
    cfg.phi_table = p.is_absolute() ? p : base_dir / p;
  } else if (optional("phi.table")) {
    bad_key("phi.table", "only valid with kind = table");
  }

  auto function = [&](const std::string& sect) {
    FunctionSource src;
    src.kind = require(sect + ".kind");
    if (!kFunctionKinds.contains(src.kind)) bad_key(sect + ".kind", "unknown kind '" + src.kind + "'");
    if (src.kind == "expression") {
      src.expr = require(sect + ".expr");
      const std::vector<std::string> vars = sect == "f" ? std::vector<std::string>{"t", "u"}
                                                        : std::vector<std::string>{"t"};
      try {
        Expression(src.expr, vars);
      } catch (const ConfigError& e) {
        bad_key(sect + ".expr", e.what());
      }
    } else if (optional(sect + ".expr")) {
      bad_key(sect + ".expr", "only valid with kind = expression");
    }
    return src;
  };
  cfg.f = function("f");
  if (const auto* d = optional("f.domain")) {
    if (*d == "real") cfg.f_domain = FDomain::real;
    else if (*d == "nonnegative") cfg.f_domain = FDomain::nonnegative;
    else bad_key("f.domain", "expected real or nonnegative, got '" + *d + "'");
  }
  const bool has_g = optional("g.kind") || optional("g.expr");
  if (has_g) cfg.g = function("g");

  if (const auto* v = optional("solver.grid_size")) {
    cfg.grid_size = count("solver.grid_size", *v);
    check_grid("solver.grid_size", cfg.grid_size);
  }
  if (const auto* v = optional("solver.tol")) {
    cfg.tol = number("solver.tol", *v);
    check_tol("solver.tol", cfg.tol);
  }
  if (const auto* v = optional("solver.max_iter")) {
    cfg.max_iter = count("solver.max_iter", *v);
    check_iter("solver.max_iter", cfg.max_iter);
  }
  if (const auto* v = optional("solver.mode")) {
    if (*v == "uniqueness") cfg.mode = RunMode::uniqueness;
    else if (*v == "positive-existence") cfg.mode = RunMode::positive_existence;
    else if (*v == "solve-only") cfg.mode = RunMode::solve_only;
    else bad_key("solver.mode", "expected uniqueness, positive-existence or solve-only, got '" + *v + "'");
  }
  if (cfg.mode == RunMode::uniqueness && !cfg.g) bad_key("g.kind", "uniqueness mode needs a Lipschitz envelope [g]");
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  Config cfg = parse_config(text.str(), path.parent_path());
  cfg.source = path;
  return cfg;
}

void apply_overrides(Config& config, const Overrides& o) {
  if (o.grid_size) {
    check_grid("--grid", *o.grid_size);
    config.grid_size = *o.grid_size;
  }
  if (o.tol) {
    check_tol("--tol", *o.tol);
    config.tol = *o.tol;
  }
  if (o.max_iter) {
    check_iter("--max-iter", *o.max_iter);
    config.max_iter = *o.max_iter;
  }
}

ProblemSpec build_problem(const Config& cfg) {
  ProblemSpec spec;
  PhiMap phi = PhiMap::identity();
  if (cfg.phi_kind == PhiKind::table) {
    const auto table = read_csv(cfg.phi_table);
    try {
      phi = PhiMap::table(table.column("t"), table.column("phi"));
    } catch (const ConfigError& e) {
      bad_key("phi.table", e.what());
    }
  } else {
    phi = phi_catalog(cfg.phi_kind);
  }
  spec.params = BvpParams{cfg.alpha, cfg.beta, cfg.eta, phi};

  if (cfg.f.kind == "expression") {
    auto expr = std::make_shared<Expression>(cfg.f.expr, std::vector<std::string>{"t", "u"});
    spec.f = [expr](double t, double u) {
      const double args[] = {t, u};
      return (*expr)(args);
    };
  } else {
    spec.f = builtin::f_by_name(cfg.f.kind, spec.params);
  }
  if (cfg.g) {
    if (cfg.g->kind == "expression") {
      auto expr = std::make_shared<Expression>(cfg.g->expr, std::vector<std::string>{"t"});
      spec.g = [expr](double t) {
        const double args[] = {t};
        return (*expr)(args);
      };
    } else {
      spec.g = builtin::g_by_name(cfg.g->kind, spec.params);
    }
  }
  spec.f_domain = cfg.f_domain.value_or(cfg.mode == RunMode::positive_existence ? FDomain::nonnegative
                                                                               : FDomain::real);
  return spec;
}

}  // namespace fracbvp::cli
