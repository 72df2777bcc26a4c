#include "commands.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "csv.hpp"
#include "fracbvp/bmetric.hpp"
#include "fracbvp/builtin_problems.hpp"
#include "fracbvp/errors.hpp"
#include "fracbvp/kernels.hpp"
#include "fracbvp/version.hpp"

namespace fracbvp::cli {

using json = nlohmann::ordered_json;

namespace {

std::string num(double x) { return format_number(x); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json certificate_json(const Certificate& c) {
  json j;
  j["mode"] = std::string(to_string(c.mode));
  j["verdict"] = std::string(to_string(c.verdict));
  j["mu"] = c.mu;
  j["beta_bound"] = c.beta_bound;
  j["g_sup"] = c.g_sup ? json(*c.g_sup) : json(nullptr);
  j["uniqueness_threshold"] = c.uniqueness_threshold;
  j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
  if (c.contraction)
    j["contraction"] = {{"passed", c.contraction->passed}, {"lambda", c.contraction->lambda},
                        {"limit", c.contraction->limit}, {"margin", c.contraction->margin}};
  if (c.geraghty)
    j["geraghty"] = {{"passed", c.geraghty->passed}, {"pairs", c.geraghty->pairs},
                     {"admissible_pairs", c.geraghty->admissible_pairs},
                     {"worst_margin", c.geraghty->worst_margin}};
  if (c.admissibility)
    j["admissibility"] = {{"passed", c.admissibility->passed}, {"pairs", c.admissibility->pairs},
                          {"violations", c.admissibility->violations},
                          {"worst_value", c.admissibility->worst_value}};
  json hyps = json::array();
  for (const auto& h : c.hypotheses)
    hyps.push_back({{"name", h.name}, {"status", std::string(to_string(h.status))}, {"detail", h.detail},
                    {"blocking", h.blocking()}});
  j["hypotheses"] = std::move(hyps);
  return j;
}

json solve_json(const SolveReport& s) {
  const auto& b = s.residuals.boundary;
  return {{"converged", s.converged},
          {"certified", s.certified},
          {"iterations", s.iterations},
          {"final_step_distance", s.final_step_distance},
          {"fixed_point_residual", s.residuals.fixed_point_residual},
          {"boundary", {{"u_at_zero", b.u_at_zero}, {"slope_at_zero", b.slope_at_zero}, {"three_point", b.three_point}}},
          {"step_distances", s.step_distances},
          {"observed_ratios", s.observed_ratios}};
}

void join_numbers(std::ostream& os, const std::vector<double>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << num(xs[i]);
}


template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

struct Setup {
  Config config;
  ProblemSpec spec;
  GreenKernel kernel;
  GridPtr grid;
};

Setup setup(const std::filesystem::path& path, const CommandOptions& options) {
  Config config = load_config(path);
  apply_overrides(config, options.overrides);
  ProblemSpec spec = build_problem(config);
  GreenKernel kernel = make_kernel(spec);
  GridPtr grid = make_grid(spec.params.phi, config.grid_size);
  return {std::move(config), std::move(spec), std::move(kernel), std::move(grid)};
}

std::optional<Certificate> certificate_for(const Config& config, const IntegralOperator& op) {
  switch (config.mode) {
    case RunMode::uniqueness: return build_certificate(op, CertificateMode::uniqueness);
    case RunMode::positive_existence:
      return build_certificate(op, CertificateMode::positive_existence, GeraghtyFamilies{});
    case RunMode::solve_only:
      if (op.spec().g) return build_certificate(op, CertificateMode::uniqueness);
      return std::nullopt;
  }
  return std::nullopt;
}

ReportBundle bundle_for(const Setup& s) {
  ReportBundle b;
  b.provenance = provenance(s.config);
  b.mu = s.kernel.mu();
  b.beta = s.spec.params.beta;
  b.beta_bound = s.kernel.beta_bound();
  return b;
}

}  // namespace

std::string render_text(const ReportBundle& b) {
  std::ostringstream os;
  for (const auto& line : b.provenance) os << "# " << line << "\n";
  os << std::left;
  os << std::setw(22) << "mu" << num(b.mu) << "\n";
  os << std::setw(22) << "beta" << num(b.beta) << "\n";
  os << std::setw(22) << "beta_bound" << num(b.beta_bound) << "\n";
  if (const auto& c = b.certificate) {
    os << std::setw(22) << "||g||" << (c->g_sup ? num(*c->g_sup) : "-") << "\n";
    os << std::setw(22) << "threshold" << num(c->uniqueness_threshold) << "\n";
    os << std::setw(22) << "lambda" << (c->lambda ? num(*c->lambda) : "-") << "\n";
    os << std::setw(22) << "certificate mode" << to_string(c->mode) << "\n";
    os << "hypotheses:\n";
    for (const auto& h : c->hypotheses) {
      os << "  " << std::setw(26) << to_string(h.status) << std::setw(40) << h.name;
      if (!h.detail.empty()) os << h.detail;
      os << "\n";
    }
    os << std::setw(22) << "verdict" << to_string(c->verdict) << "\n";
  } else {
    os << std::setw(22) << "verdict" << "none (solve-only without [g])" << "\n";
  }
  if (const auto& k = b.kernel_check) {
    os << "kernel checks (" << k->gridsize << "x" << k->gridsize << " interior grid):\n";
    os << "  positivity   " << yes_no(k->positivity) << "  min G = " << num(k->min_value) << " at (t, s) = ("
       << num(k->min_at_t) << ", " << num(k->min_at_s) << ")\n";
    os << "  continuity   " << yes_no(k->continuity) << "  max relative seam jump = " << num(k->max_seam_jump) << "\n";
    os << "  max bound    " << yes_no(k->max_bound) << "  worst excess = " << num(k->worst_bound_excess) << "\n";
  }
  if (const auto& s = b.solve) {
    os << "solve:\n";
    os << "  converged             " << yes_no(s->converged) << "\n";
    os << "  certified             " << yes_no(s->certified) << "\n";
    os << "  iterations            " << s->iterations << "\n";
    os << "  final step distance   " << num(s->final_step_distance) << "\n";
    os << "  fixed-point residual  " << num(s->residuals.fixed_point_residual) << "\n";
    os << "  |u(0)|                " << num(s->residuals.boundary.u_at_zero) << "\n";
    os << "  |u'(0)|               " << num(s->residuals.boundary.slope_at_zero) << "\n";
    os << "  |u'(1) - beta u(eta)| " << num(s->residuals.boundary.three_point) << "\n";
    os << "  step distances        ";
    join_numbers(os, s->step_distances);
    os << "\n  observed ratios       ";
    join_numbers(os, s->observed_ratios);
    os << "\n";
  }
  return os.str();
}

std::string render_json(const ReportBundle& b) {
  json j;
  j["provenance"] = b.provenance;
  j["mu"] = b.mu;
  j["beta"] = b.beta;
  j["beta_bound"] = b.beta_bound;
  j["certificate"] = b.certificate ? certificate_json(*b.certificate) : json(nullptr);
  if (const auto& k = b.kernel_check)
    j["kernel_checks"] = {{"gridsize", k->gridsize},          {"hypothesis_holds", k->hypothesis_holds},
                          {"positivity", k->positivity},      {"continuity", k->continuity},
                          {"max_bound", k->max_bound},        {"min_value", k->min_value},
                          {"max_seam_jump", k->max_seam_jump}, {"worst_bound_excess", k->worst_bound_excess}};
  if (b.solve) j["solve"] = solve_json(*b.solve);
  return j.dump(2) + "\n";
}

std::vector<std::string> provenance(const Config& c) {
  std::vector<std::string> out;
  out.push_back("fracbvp " + std::string(kVersion));
  if (!c.source.empty()) out.push_back("config " + c.source.string());
  for (const auto& [k, v] : c.echo) out.push_back("config " + k + " = " + v);
  out.push_back("effective grid_size = " + std::to_string(c.grid_size) + ", tol = " + num(c.tol) +
                ", max_iter = " + std::to_string(c.max_iter) + ", mode = " + std::string(to_string(c.mode)));
  out.push_back("grid: graded two-point Gauss in phi, " + std::to_string(c.grid_size) + " nodes, " +
                std::to_string(c.grid_size / 2) + " panels, grading exponent " + num(QuadratureGrid::kGrading) +
                ", phi = " + std::string(to_string(c.phi_kind)));
  out.push_back("sample seed = " + std::to_string(sample_seed()));
  return out;
}

GreenKernel make_kernel(const ProblemSpec& spec) {
  spec.params.validate();
  if (mu(spec.params) == 0.0) {
    std::ostringstream os;
    os << "μ≠0 required: mu = 0 for alpha = " << num(spec.params.alpha) << ", beta = " << num(spec.params.beta)
       << ", eta = " << num(spec.params.eta);
    throw ConfigError(os.str());
  }
  return GreenKernel(spec.params);
}

int cmd_check(const std::filesystem::path& path, const CommandOptions& options, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const Setup s = setup(path, options);
    const IntegralOperator op(s.spec, s.kernel, s.grid);
    ReportBundle b = bundle_for(s);
    try {
      b.certificate = certificate_for(s.config, op);
    } catch (const NumericError& e) {
      err << "error: certificate evaluation failed: " << e.what() << "\n";
      return static_cast<int>(kCertificateFailure);
    }
    b.kernel_check = check_kernel_properties(s.kernel, 200, 1e-10, 1e-12);
    out << (options.json ? render_json(b) : render_text(b));
    if (s.config.mode == RunMode::solve_only) return static_cast<int>(kOk);
    return static_cast<int>(b.certificate->certified() ? kOk : kCertificateFailure);
  });
}

int cmd_solve(const std::filesystem::path& path, const std::filesystem::path& output,
              const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Setup s = setup(path, options);
    const IntegralOperator op(s.spec, s.kernel, s.grid);
    ReportBundle b = bundle_for(s);
    b.certificate = certificate_for(s.config, op);
    auto report_path = output;
    report_path += options.json ? ".report.json" : ".report.txt";
    SolveReport report(GridFunction::constant(s.grid, 0.0));
    try {
      report = picard_solve(op, GridFunction::constant(s.grid, 0.0), s.config.tol, s.config.max_iter);
    } catch (const NumericError& e) {
      err << "error: " << e.what() << "\n";
      b.solve = report;
      write_file_atomic(report_path, options.json ? render_json(b) : render_text(b));
      return static_cast<int>(kNoConvergence);
    }
    report.certified = b.certificate && b.certificate->certified();
    b.solve = report;

    std::ostringstream csv;
    for (const auto& line : b.provenance) csv << "# " << line << "\n";
    csv << "# converged = " << (report.converged ? "true" : "false") << "\n";
    csv << "# iterations = " << report.iterations << "\n";
    csv << "t,u\n";
    const auto nodes = s.grid->nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) csv << num(nodes[i]) << "," << num(report.solution[i]) << "\n";
    write_file_atomic(output, csv.str());
    write_file_atomic(report_path, options.json ? render_json(b) : render_text(b));

    out << "wrote " << output.string() << " and " << report_path.string() << "\n";
    out << "converged = " << (report.converged ? "true" : "false") << ", iterations = " << report.iterations
        << ", fixed-point residual = " << num(report.residuals.fixed_point_residual)
        << ", certified = " << (report.certified ? "true" : "false") << "\n";
    return static_cast<int>(report.converged ? kOk : kNoConvergence);
  });
}

int cmd_green(const std::filesystem::path& path, const std::filesystem::path& output, std::size_t resolution,
              const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (resolution < 2) throw ConfigError("--resolution must be at least 2");
    const Setup s = setup(path, options);
    std::vector<double> pts(resolution);
    for (std::size_t i = 0; i < resolution; ++i) pts[i] = static_cast<double>(i) / static_cast<double>(resolution - 1);
    const auto table = kernels::green_table(s.kernel, pts, pts);
    std::ostringstream csv;
    for (const auto& line : provenance(s.config)) csv << "# " << line << "\n";
    csv << "# mu = " << num(s.kernel.mu()) << "\n";
    csv << "# beta_bound = " << num(s.kernel.beta_bound()) << "\n";
    csv << "t,s,G\n";
    for (std::size_t i = 0; i < resolution; ++i)
      for (std::size_t j = 0; j < resolution; ++j)
        csv << num(pts[i]) << "," << num(pts[j]) << "," << num(table[i * resolution + j]) << "\n";
    write_file_atomic(output, csv.str());
    out << "wrote " << output.string() << " (" << resolution * resolution << " rows)\n";
    return static_cast<int>(kOk);
  });
}

double ReferenceConstant::abs_diff() const { return std::abs(computed - printed); }

std::vector<ReferenceConstant> reference_constants() {
  const auto ex41 = builtin::example41();
  const auto ex42 = builtin::example42();
  const GreenKernel k41(ex41.params), k42(ex42.params);
  const auto grid42 = make_grid(ex42.params.phi);
  const double g_sup = g_sup_norm(ex42.g, *grid42);
  return {
      {"example41", "beta_bound", k41.beta_bound(), 2.95903},
      {"example41", "mu", k41.mu(), 0.22703},
      {"example42", "beta_bound", k42.beta_bound(), 5.60946},
      {"example42", "mu", k42.mu(), 0.0346236},
      {"example42", "g_sup", g_sup, 0.895984},
      {"example42", "uniqueness_threshold", uniqueness_threshold(k42), 1.95333},
  };
}

int cmd_verify_paper(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  (void)err;
  const auto constants = reference_constants();
  bool all = true;
  for (const auto& c : constants) all = all && c.abs_diff() <= kReferenceTolerance;
  if (options.json) {
    json j;
    j["tolerance"] = kReferenceTolerance;
    j["passed"] = all;
    json rows = json::array();
    for (const auto& c : constants)
      rows.push_back({{"example", c.example}, {"quantity", c.quantity}, {"computed", c.computed},
                      {"printed", c.printed}, {"abs_diff", c.abs_diff()},
                      {"passed", c.abs_diff() <= kReferenceTolerance}});
    j["constants"] = std::move(rows);
    out << j.dump(2) << "\n";
  } else {
    out << std::left << std::setw(11) << "example" << std::setw(22) << "quantity" << std::setw(24) << "computed"
        << std::setw(12) << "printed" << std::setw(24) << "abs diff" << "status\n";
    for (const auto& c : constants)
      out << std::setw(11) << c.example << std::setw(22) << c.quantity << std::setw(24) << num(c.computed)
          << std::setw(12) << num(c.printed) << std::setw(24) << num(c.abs_diff())
          << (c.abs_diff() <= kReferenceTolerance ? "ok" : "MISMATCH") << "\n";
    out << (all ? "all constants within " : "some constants outside ") << num(kReferenceTolerance) << "\n";
  }
  return all ? kOk : kCertificateFailure;
}

}  // namespace fracbvp::cli
