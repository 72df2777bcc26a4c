// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "commands.hpp"
#include "csv.hpp"
#include "fracbvp/bmetric.hpp"
#include "fracbvp/builtin_problems.hpp"
#include "fracbvp/solver.hpp"
#include "reference_oracles.hpp"

using namespace fracbvp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int run_criterion(int id, const std::string& title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0.0 && seconds >= time_limit)
    out.failures.push_back("runtime " + sci(seconds) + " s exceeds " + sci(time_limit) + " s");
  const bool pass = out.failures.empty();
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << "  (" << sci(seconds) << " s)\n";
  for (const auto& n : out.notes) std::cout << "        " << n << "\n";
  for (const auto& f : out.failures) std::cout << "        failed: " << f << "\n";
  return pass ? 0 : 1;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FRACBVP_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

double sup_abs(const GridFunction& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

void reference_constants(Outcome& out) {
  for (const auto& c : cli::reference_constants()) {
    out.note(c.example + " " + c.quantity + " = " + cli::format_number(c.computed) + " (|diff| " + sci(c.abs_diff()) + ")");
    out.require(c.abs_diff() <= 1e-4, c.example + " " + c.quantity);
  }
}

void green_properties(Outcome& out) {
  for (const auto& spec : {builtin::example41(), builtin::example42()}) {
    const GreenKernel kernel(spec.params);
    const auto check = check_kernel_properties(kernel, 200, 1e-10, 1e-12);
    const std::string tag = std::string(to_string(spec.params.phi.kind()));
    out.note(tag + ": min G " + sci(check.min_value) + ", seam jump " + sci(check.max_seam_jump) +
             ", bound excess " + sci(check.worst_bound_excess));
    out.require(check.positivity, tag + " positivity");
    out.require(check.continuity, tag + " seam continuity");
    out.require(check.max_bound, tag + " max bound");
  }
}

void classical_reduction(Outcome& out) {
  const GreenKernel kernel({3.0, 0.0, 0.5, PhiMap::identity()});
  double worst = 0.0;
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const double t = i / 49.0, s = j / 49.0;
      worst = std::max(worst, std::abs(kernel(t, s) - oracle::classical_green(t, s)));
    }
  out.note("max |G - oracle| on 50x50 = " + sci(worst) + ", G(0.5, 0.25) = " + cli::format_number(kernel(0.5, 0.25)));
  out.require(worst <= 1e-12, "50x50 agreement");
  out.require(std::abs(kernel(0.5, 0.25) - 0.0625) <= 1e-12, "spot value");
}

void calculus_laws(Outcome& out) {
  const std::vector<std::function<double(double)>> fns{
      [](double s) { return std::cos(2 * s); },
      [](double s) { return std::exp(s) - s; },
      [](double s) { return 1.0 / (1.0 + s * s); },
  };
  double semigroup = 0.0, composition = 0.0, worst_shrink = 1e300;
  for (const auto& phi : {PhiMap::sin_quarter_pi(), PhiMap::sqrt_half()}) {
    const auto grid = make_grid(phi);
    for (const auto& fn : fns) {
      const auto u = GridFunction::sample(grid, fn);
      semigroup = std::max({semigroup, semigroup_defect(0.6, 1.4, phi, u), semigroup_defect(2.5, 0.5, phi, u)});
      for (double alpha : {0.5, 2.5}) {
        const auto iu = frac_integral_on_grid(alpha, phi, u);
        for (int k = 0; k <= 8; ++k) {
          const double t = 0.1 + 0.1 * k;
          composition = std::max(composition, std::abs(frac_derivative(alpha, phi, iu, t) - fn(t)));
        }
      }
      double prev = -1.0;
      for (std::size_t n : {16, 32, 64}) {
        const auto g = make_grid(phi, n);
        const double d = semigroup_defect(0.6, 1.4, phi, GridFunction::sample(g, fn));
        if (prev > 0.0) worst_shrink = std::min(worst_shrink, prev / d);
        prev = d;
      }
    }
  }
  out.note("semigroup defect " + sci(semigroup) + ", D∘I error " + sci(composition) + ", smallest shrink factor " +
           sci(worst_shrink));
  out.require(semigroup <= 1e-6, "semigroup defect <= 1e-6");
  out.require(composition <= 1e-4, "composition within 1e-4");
  out.require(worst_shrink >= 2.0, "defect shrinks by >= 2x per doubling");
}

void certified_solve(Outcome& out) {
  const auto spec = builtin::example42();
  const GreenKernel kernel(spec.params);
  const auto fine = make_grid(spec.params.phi, 1024);
  const IntegralOperator op(spec, kernel, fine);
  const auto cert = build_certificate(op, CertificateMode::uniqueness);
  auto report = picard_solve(op, GridFunction::constant(fine, 0.0), 1e-16);
  report.certified = cert.certified();
  const auto& b = report.residuals.boundary;
  out.note("iterations " + std::to_string(report.iterations) + ", residual " +
           sci(report.residuals.fixed_point_residual) + ", |u(0)| " + sci(b.u_at_zero) + ", |u'(0)| " +
           sci(b.slope_at_zero) + ", three-point " + sci(b.three_point) + ", last ratio " +
           sci(report.observed_ratios.empty() ? 0.0 : report.observed_ratios.back()) + ", lambda " +
           sci(*cert.lambda));
  out.require(report.certified, "certificate");
  out.require(report.converged, "convergence");
  out.require(report.residuals.fixed_point_residual <= 1e-6, "fixed-point residual");
  out.require(b.u_at_zero <= 1e-4 && b.slope_at_zero <= 1e-4 && b.three_point <= 1e-4, "boundary residuals");
  out.require(!report.observed_ratios.empty() && report.observed_ratios.back() <= 0.106, "observed ratio <= 0.106");
  out.require(!report.observed_ratios.empty() && report.observed_ratios.back() <= *cert.lambda + 1e-3,
              "observed ratio <= lambda + 1e-3");

  const auto coarse = make_grid(spec.params.phi, 512);
  const auto other = picard_solve(spec, kernel, GridFunction::constant(coarse, 0.0), 1e-16);
  double gap = 0.0;
  for (int i = 0; i <= 1000; ++i)
    gap = std::max(gap, std::abs(report.solution.at(i / 1000.0) - other.solution.at(i / 1000.0)));
  out.note("512 vs 1024 sup gap " + sci(gap));
  out.require(other.converged && gap <= 1e-5, "grid consistency");
}

void linear_fixed_point(Outcome& out) {
  const auto spec = builtin::example41();
  const GreenKernel kernel(spec.params);
  const auto grid = make_grid(spec.params.phi, 1024);
  const IntegralOperator op(spec, kernel, grid);
  const auto report = picard_solve(op, GridFunction::constant(grid, 1.0));
  out.note("iterations " + std::to_string(report.iterations) + ", sup |u| " + sci(sup_abs(report.solution)));
  out.require(report.converged, "convergence");
  out.require(sup_abs(report.solution) <= 1e-8, "zero fixed point");
  const auto cert = build_certificate(op, CertificateMode::positive_existence, GeraghtyFamilies{});
  out.note("Geraghty worst margin " + sci(cert.geraghty->worst_margin) + " over " +
           std::to_string(cert.geraghty->admissible_pairs) + " admissible pairs");
  out.require(cert.geraghty->passed && cert.geraghty->pairs == 50, "Geraghty inequality on 50 pairs");
  out.require(cert.verdict == Verdict::exists_positive, "verdict exists-positive");
}

void negative_controls(Outcome& out) {
  auto high = builtin::example41();
  high.params.beta = 3.5;
  const GreenKernel k_high(high.params);
  out.require(!k_high.positivity_hypothesis() && !check_kernel_properties(k_high).passed(), "beta above bound flagged");

  auto scaled = builtin::example42();
  scaled.g = [g = scaled.g](double t) { return 10.0 * g(t); };
  const GreenKernel k42(scaled.params);
  const auto cert = build_certificate(scaled, k42, make_grid(scaled.params.phi, 512), CertificateMode::uniqueness);
  out.require(cert.verdict == Verdict::no_certificate, "g x10 gives no-certificate");
  out.require(!contraction_certificate(0.6, 2.0).passed, "lambda = 0.6 fails");

  const fs::path dir = fs::temp_directory_path() / ("fracbvp_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string configs = FRACBVP_CONFIG_DIR;
  std::ifstream in(configs + "/example42.cfg");
  std::stringstream text;
  text << in.rdbuf();
  std::string b6 = text.str();
  b6.replace(b6.find("beta = 4"), 8, "beta = 6");
  std::ofstream(dir / "b6.cfg") << b6;
  std::ofstream(dir / "mu0.cfg") << "[problem]\nalpha = 3\nbeta = 2\neta = 1\n[phi]\nkind = identity\n"
                                    "[f]\nkind = zero\n[solver]\nmode = solve-only\n";
  const std::string out_csv = (dir / "u.csv").string();
  const struct {
    std::string args;
    int expected;
  } cases[] = {
      {"verify-paper", 0},
      {"check " + configs + "/example41.cfg", 0},
      {"check " + configs + "/example42.cfg", 0},
      {"solve " + configs + "/example42.cfg -o " + out_csv, 0},
      {"check " + (dir / "mu0.cfg").string(), 1},
      {"solve " + (dir / "mu0.cfg").string() + " -o " + out_csv, 1},
      {"check " + (dir / "missing.cfg").string(), 1},
      {"check " + configs + "/example42.cfg --grid 63", 1},
      {"check " + (dir / "b6.cfg").string(), 2},
      {"solve " + configs + "/example42.cfg -o " + out_csv + " --max-iter 2", 3},
  };
  std::string observed;
  for (const auto& c : cases) {
    const int code = run_cli(c.args);
    observed += std::to_string(code);
    out.require(code == c.expected, "exit " + std::to_string(code) + " (expected " + std::to_string(c.expected) +
                                        ") for: " + c.args);
  }
  out.note("black-box exit codes " + observed);
  fs::remove_all(dir);
}

void bmetric_axioms(Outcome& out) {
  const auto grid = make_grid(PhiMap::sqrt_half(), 128);
  const auto fns = random_grid_functions(grid, 3000, sample_seed(), false);
  std::size_t violations = 0;
  for (std::size_t k = 0; k < 1000; ++k) {
    const auto &x = fns[3 * k], &y = fns[3 * k + 1], &z = fns[3 * k + 2];
    if (distance(x, z) > 2.0 * (distance(x, y) + distance(y, z)) * (1 + 1e-15)) ++violations;
  }
  const auto psi = check_psi_family(PsiFunction::identity());
  const auto theta = check_theta_family(ThetaFunction::rational(), kSolverR);
  out.note("triangle violations " + std::to_string(violations) + "/1000, max theta sample " +
           cli::format_number(theta.max_value));
  out.require(violations == 0, "relaxed triangle inequality");
  out.require(psi.passed, "psi family: " + psi.failure);
  out.require(theta.passed && theta.max_value < 0.25, "theta family: " + theta.failure);
}

}  // namespace

int main() {
  int failed = 0;
  failed += run_criterion(1, "reference-constant reproduction", 1.0, reference_constants);
  failed += run_criterion(2, "Green's-function property suite", 10.0, green_properties);
  failed += run_criterion(3, "classical-reduction oracle equivalence", 0.0, classical_reduction);
  failed += run_criterion(4, "fractional-calculus laws", 0.0, calculus_laws);
  failed += run_criterion(5, "certified solve of the nonlinear example", 60.0, certified_solve);
  failed += run_criterion(6, "linear example fixed point and Geraghty certificate", 0.0, linear_fixed_point);
  failed += run_criterion(7, "negative controls and exit-code contract", 0.0, negative_controls);
  failed += run_criterion(8, "b-metric axioms and family invariants", 0.0, bmetric_axioms);
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed;
}
