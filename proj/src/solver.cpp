#include "fracbvp/solver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fracbvp/errors.hpp"

namespace fracbvp {

namespace {

std::string fmt(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : "?";
}

}  // namespace

SampledCheck check_f_finite(const ProblemSpec& spec) {
  SampledCheck out;
  const double lo = spec.f_domain == FDomain::nonnegative ? 0.0 : -10.0;
  for (int i = 0; i <= 20; ++i)
    for (int k = 0; k <= 40; ++k) {
      const double t = i / 20.0, u = lo + (10.0 - lo) * k / 40.0;
      ++out.samples;
      if (!std::isfinite(spec.f(t, u))) out.passed = false;
    }
  return out;
}

SampledCheck check_lipschitz(const ProblemSpec& spec, std::uint64_t seed) {
  SampledCheck out;
  if (!spec.g) {
    out.passed = false;
    return out;
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double lo = spec.f_domain == FDomain::nonnegative ? 0.0 : -10.0;
  out.worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 20; ++i) {
    const double t = i / 20.0;
    const double gt = spec.g(t);
    for (int k = 0; k < 20; ++k) {
      const double u = lo + (10.0 - lo) * uniform();
      const double v = lo + (10.0 - lo) * uniform();
      const double lhs = std::abs(spec.f(t, u) - spec.f(t, v));
      const double rhs = gt * std::abs(u - v);
      const double excess = lhs - rhs;
      ++out.samples;
      out.worst = std::max(out.worst, excess);
      if (excess > 1e-12 * (1.0 + std::abs(rhs))) out.passed = false;
    }
  }
  return out;
}

SampledCheck check_f_nonnegative(const ProblemSpec& spec) {
  SampledCheck out;
  out.worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 20; ++i)
    for (int k = 0; k <= 40; ++k) {
      const double t = i / 20.0, u = 10.0 * k / 40.0;
      const double value = spec.f(t, u);
      ++out.samples;
      out.worst = std::max(out.worst, -value);
      if (!(value >= 0.0)) out.passed = false;
    }
  return out;
}

IntegralOperator::IntegralOperator(ProblemSpec spec, const GreenKernel& kernel, GridPtr grid, kernels::Exec exec)
    : spec_(std::move(spec)), kernel_(kernel), grid_(std::move(grid)), exec_(exec) {
  if (!spec_.f) throw ConfigError("problem has no nonlinearity f");
  if (!grid_->phi().same_map(kernel_.params().phi))
    throw ConfigError("integral operator: grid and problem use different phi maps");
  matrix_ = kernels::assemble_nystrom(kernel_, *grid_, exec_);
}

std::vector<double> IntegralOperator::f_values(const GridFunction& u) const {
  if (u.grid_ptr() != grid_ && !u.grid().same_as(*grid_)) throw GridMismatch();
  const auto s = grid_->nodes();
  std::vector<double> fv(u.size());
  for (std::size_t j = 0; j < fv.size(); ++j) {
    fv[j] = spec_.f(s[j], u[j]);
    if (!std::isfinite(fv[j])) {
      std::ostringstream os;
      os << "f returned a non-finite value at s = " << s[j] << ", u = " << u[j];
      throw NumericError(os.str());
    }
  }
  return fv;
}

GridFunction IntegralOperator::apply(const GridFunction& u) const {
  const std::vector<double> fv = f_values(u);
  std::vector<double> out(fv.size());
  kernels::matvec(matrix_, fv, out, exec_);
  return GridFunction(grid_, std::move(out));
}

double IntegralOperator::evaluate_at(double t, const GridFunction& u) const {
  const double ts[] = {t};
  return evaluate_at(ts, u).front();
}

std::vector<double> IntegralOperator::evaluate_at(std::span<const double> ts, const GridFunction& u) const {
  const std::vector<double> fv = f_values(u);
  const auto y = grid_->phi_nodes();
  const auto w = grid_->weights();
  const PhiMap& phi = kernel_.params().phi;
  std::vector<double> out(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] >= 0.0 && ts[k] <= 1.0)) throw DomainError("operator evaluation: t must lie in [0,1]");
    const double yt = phi.eval(ts[k]);
    double sum = 0.0;
    for (std::size_t j = 0; j < fv.size(); ++j) sum += w[j] * kernel_.at_phi(yt, y[j]) * fv[j];
    out[k] = sum;
  }
  return out;
}

GridFunction apply_operator(const ProblemSpec& spec, const GreenKernel& kernel, const GridFunction& u) {
  return IntegralOperator(spec, kernel, u.grid_ptr()).apply(u);
}

std::string_view to_string(CertificateMode mode) {
  return mode == CertificateMode::uniqueness ? "uniqueness" : "positive-existence";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::unique_solution: return "unique-solution";
    case Verdict::exists_positive: return "exists-positive";
    case Verdict::no_certificate: return "no-certificate";
  }
  return "no-certificate";
}

std::string_view to_string(HypothesisStatus status) {
  switch (status) {
    case HypothesisStatus::passed: return "pass";
    case HypothesisStatus::failed: return "FAIL";
    case HypothesisStatus::sampled_pass: return "pass (sampled)";
    case HypothesisStatus::sampled_fail: return "FAIL (sampled)";
    case HypothesisStatus::assumed: return "assumed by construction";
    case HypothesisStatus::unchecked: return "unchecked hypothesis";
  }
  return "?";
}

const Hypothesis* Certificate::find(std::string_view name) const {
  for (const auto& h : hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

double uniqueness_threshold(const GreenKernel& kernel) {
  const double a = kernel.params().alpha;
  return kernel.mu() * kernel.gamma_alpha() /
         (std::sqrt(2.0) * std::pow(kernel.Phi_one(), a - 1.0) * kernel.phi_prime_one());
}

double contraction_constant(const GreenKernel& kernel, double g_sup) {
  const double a = kernel.params().alpha;
  const double root = g_sup * kernel.phi_prime_one() * std::pow(kernel.Phi_one(), a - 1.0) /
                      (kernel.mu() * kernel.gamma_alpha());
  return root * root;
}

double g_sup_norm(const std::function<double(double)>& g, const QuadratureGrid& grid) {
  double sup = std::max(g(0.0), g(1.0));
  for (double s : grid.nodes()) sup = std::max(sup, g(s));
  return sup;
}

Certificate build_certificate(const IntegralOperator& op, CertificateMode mode,
                              const std::optional<GeraghtyFamilies>& families, const SamplePairs& samples) {
  const ProblemSpec& spec = op.spec();
  const GreenKernel& kernel = op.kernel();
  if (mode == CertificateMode::uniqueness && !spec.g)
    throw ConfigError("uniqueness certificate requires a Lipschitz envelope g");
  if (mode == CertificateMode::positive_existence) {
    if (!families) throw ConfigError("positive-existence certificate requires psi, theta and tau");
    if (spec.f_domain != FDomain::nonnegative)
      throw ConfigError("positive-existence certificate requires f on the nonnegative domain");
  }

  Certificate cert;
  cert.mode = mode;
  cert.mu = kernel.mu();
  cert.beta_bound = kernel.beta_bound();
  cert.uniqueness_threshold = uniqueness_threshold(kernel);
  auto add = [&cert](std::string name, HypothesisStatus status, std::string detail) {
    cert.hypotheses.push_back({std::move(name), status, std::move(detail)});
  };

  const bool beta_ok = kernel.positivity_hypothesis();
  add("beta < beta_bound", beta_ok ? HypothesisStatus::passed : HypothesisStatus::failed,
      "beta = " + fmt(kernel.params().beta) + ", bound = " + fmt(cert.beta_bound));
  add("mu > 0", cert.mu > 0.0 ? HypothesisStatus::passed : HypothesisStatus::failed, "mu = " + fmt(cert.mu));

  const SampledCheck finite = check_f_finite(spec);
  add("(H1) f continuous", finite.passed ? HypothesisStatus::sampled_pass : HypothesisStatus::sampled_fail,
      std::to_string(finite.samples) + " samples");

  if (spec.g) {
    cert.g_sup = g_sup_norm(spec.g, *op.grid());
    cert.lambda = contraction_constant(kernel, *cert.g_sup);
    cert.contraction = contraction_certificate(*cert.lambda, kSolverR);
  }

  if (mode == CertificateMode::uniqueness) {
    const SampledCheck lip = check_lipschitz(spec, sample_seed());
    add("(H2) Lipschitz envelope g", lip.passed ? HypothesisStatus::sampled_pass : HypothesisStatus::sampled_fail,
        std::to_string(lip.samples) + " samples, worst excess " + fmt(lip.worst));
    const bool below = *cert.g_sup < cert.uniqueness_threshold;
    add("||g|| < threshold", below ? HypothesisStatus::passed : HypothesisStatus::failed,
        "||g|| = " + fmt(*cert.g_sup) + ", threshold = " + fmt(cert.uniqueness_threshold));
    // the threshold inequality is lambda < 1/2 rewritten; disagreement means rounding at the boundary
    const bool consistent = below == cert.contraction->passed;
    add("lambda < 1/r", cert.contraction->passed ? HypothesisStatus::passed : HypothesisStatus::failed,
        "lambda = " + fmt(*cert.lambda) + (consistent ? "" : " (inconsistent with threshold test)"));
  } else {
    const GeraghtyFamilies& fam = *families;
    const FamilyCheck psi_ok = check_psi_family(fam.psi);
    const FamilyCheck theta_ok = check_theta_family(fam.theta, kSolverR);
    add("psi in Psi", psi_ok.passed ? HypothesisStatus::sampled_pass : HypothesisStatus::sampled_fail,
        fam.psi.name + (psi_ok.passed ? "" : ": " + psi_ok.failure));
    add("theta in Theta", theta_ok.passed ? HypothesisStatus::sampled_pass : HypothesisStatus::sampled_fail,
        fam.theta.name + ", max sampled " + fmt(theta_ok.max_value) +
            (theta_ok.passed ? "" : ": " + theta_ok.failure));
    const SampledCheck nonneg = check_f_nonnegative(spec);
    add("(H3) f >= 0 on [0,1] x R+", nonneg.passed ? HypothesisStatus::sampled_pass : HypothesisStatus::sampled_fail,
        std::to_string(nonneg.samples) + " samples");

    SamplePairs drawn;
    const SamplePairs& pairs = samples.empty()
                                   ? (drawn = random_nonnegative_pairs(op.grid(), kDefaultSamplePairs, sample_seed()))
                                   : samples;
    const Operator apply = [&op](const GridFunction& u) { return op.apply(u); };
    cert.geraghty = geraghty_inequality_check(apply, fam.psi, fam.theta, fam.tau, pairs, kSolverR);
    add("(i) generalized Geraghty inequality",
        cert.geraghty->passed ? HypothesisStatus::sampled_pass : HypothesisStatus::sampled_fail,
        std::to_string(cert.geraghty->admissible_pairs) + " of " + std::to_string(cert.geraghty->pairs) +
            " pairs admissible, worst margin " + fmt(cert.geraghty->worst_margin));

    const GridFunction u0 = GridFunction::constant(op.grid(), 0.0);
    const bool witness = fam.tau.holds(u0, op.apply(u0));
    add("(ii) tau(u0, A u0) >= 0 for u0 = 0", witness ? HypothesisStatus::passed : HypothesisStatus::failed, "");

    cert.admissibility = admissibility_check(apply, fam.tau, pairs);
    add("(iii) A is gamma-admissible",
        cert.admissibility->passed ? HypothesisStatus::sampled_pass : HypothesisStatus::sampled_fail,
        std::to_string(cert.admissibility->violations) + " violations");
    add("(iv) closure of tau under limits",
        fam.tau.closure_by_construction ? HypothesisStatus::assumed : HypothesisStatus::unchecked, fam.tau.name);
  }

  const bool blocked = std::any_of(cert.hypotheses.begin(), cert.hypotheses.end(),
                                   [](const Hypothesis& h) { return h.blocking(); });
  if (!blocked)
    cert.verdict = mode == CertificateMode::uniqueness ? Verdict::unique_solution : Verdict::exists_positive;
  return cert;
}

Certificate build_certificate(const ProblemSpec& spec, const GreenKernel& kernel, const GridPtr& grid,
                              CertificateMode mode, const std::optional<GeraghtyFamilies>& families,
                              const SamplePairs& samples) {
  return build_certificate(IntegralOperator(spec, kernel, grid), mode, families, samples);
}

ResidualReport residual_report(const IntegralOperator& op, const GridFunction& u) {
  ResidualReport out;
  const GridFunction au = op.apply(u);
  for (std::size_t i = 0; i < u.size(); ++i)
    out.fixed_point_residual = std::max(out.fixed_point_residual, std::abs(au[i] - u[i]));

  const double h = kBoundaryStep;
  const double eta = op.kernel().params().eta;
  const double beta = op.kernel().params().beta;
  const std::vector<double> ts{0.0, h, 2 * h, 3 * h, 4 * h, 1.0 - 4 * h, 1.0 - 3 * h, 1.0 - 2 * h, 1.0 - h, 1.0, eta};
  const std::vector<double> v = op.evaluate_at(ts, u);
  // one-sided five-point stencils, fourth order
  const double slope0 = (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]) / (12 * h);
  const double slope1 = (25 * v[9] - 48 * v[8] + 36 * v[7] - 16 * v[6] + 3 * v[5]) / (12 * h);
  out.boundary.u_at_zero = std::abs(v[0]);
  out.boundary.slope_at_zero = std::abs(slope0);
  out.boundary.three_point = std::abs(slope1 - beta * v[10]);
  return out;
}

ResidualReport residual_report(const ProblemSpec& spec, const GreenKernel& kernel, const GridFunction& u) {
  return residual_report(IntegralOperator(spec, kernel, u.grid_ptr()), u);
}

SolveReport picard_solve(const IntegralOperator& op, const GridFunction& u0, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw ConfigError("picard: tolerance must be positive");
  SolveReport report(u0);
  GridFunction current = u0;
  for (std::size_t n = 0; n < max_iter; ++n) {
    GridFunction next = op.apply(current);
    const double d = distance(next, current);
    if (!std::isfinite(d)) throw NumericError("picard: non-finite iterate");
    report.step_distances.push_back(d);
    if (report.step_distances.size() > 1) {
      const double prev = report.step_distances[report.step_distances.size() - 2];
      report.observed_ratios.push_back(prev > 0.0 ? d / prev : 0.0);
    }
    current = std::move(next);
    report.iterations = n + 1;
    report.final_step_distance = d;
    if (d < tol) {
      report.converged = true;
      break;
    }
  }
  report.solution = current;
  report.residuals = residual_report(op, current);
  return report;
}

SolveReport picard_solve(const ProblemSpec& spec, const GreenKernel& kernel, const GridFunction& u0, double tol,
                         std::size_t max_iter) {
  return picard_solve(IntegralOperator(spec, kernel, u0.grid_ptr()), u0, tol, max_iter);
}

}  // namespace fracbvp
