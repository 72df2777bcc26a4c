#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracbvp/bmetric.hpp"
#include "fracbvp/green_kernel.hpp"
#include "fracbvp/kernels.hpp"
#include "fracbvp/phi_calculus.hpp"

namespace fracbvp {

enum class FDomain { real, nonnegative };

/// Full statement of D^(alpha,phi) u + f(t, u) = 0 with the three-point conditions.
struct ProblemSpec {
  BvpParams params;
  std::function<double(double, double)> f;
  /// Lipschitz envelope: |f(t,u) - f(t,v)| <= g(t) |u - v|. Empty when not supplied.
  std::function<double(double)> g;
  FDomain f_domain = FDomain::real;
};

struct SampledCheck {
  bool passed = true;
  std::size_t samples = 0;
  double worst = 0.0;  // largest violation seen (<= 0 on success)
};

/// f finite on a 21 x 41 sample of [0,1] x [-10,10] (or [0,10] for the nonnegative domain).
SampledCheck check_f_finite(const ProblemSpec& spec);
/// Sampled (H2): |f(t,u)-f(t,v)| <= g(t)|u-v| over fixed (t,u,v) triples.
SampledCheck check_lipschitz(const ProblemSpec& spec, std::uint64_t seed = kDefaultSeed);
/// f(t,u) >= 0 for t in [0,1], u >= 0 on a fixed sample.
SampledCheck check_f_nonnegative(const ProblemSpec& spec);

/// Nystrom discretisation of (A u)(t) = int_0^1 G(t,s) phi'(s) f(s, u(s)) ds on a grid.
class IntegralOperator {
public:
  /// Throws ConfigError when the grid's phi differs from the problem's.
  IntegralOperator(ProblemSpec spec, const GreenKernel& kernel, GridPtr grid,
                   kernels::Exec exec = kernels::kDefaultExec);

  const ProblemSpec& spec() const noexcept { return spec_; }
  const GreenKernel& kernel() const noexcept { return kernel_; }
  const GridPtr& grid() const noexcept { return grid_; }

  /// A u at every node. Throws NumericError when f returns a non-finite value.
  GridFunction apply(const GridFunction& u) const;
  /// A u at an arbitrary t in [0,1] (the Nystrom interpolant).
  double evaluate_at(double t, const GridFunction& u) const;
  /// A u at several points.
  std::vector<double> evaluate_at(std::span<const double> ts, const GridFunction& u) const;

private:
  std::vector<double> f_values(const GridFunction& u) const;

  ProblemSpec spec_;
  GreenKernel kernel_;
  GridPtr grid_;
  kernels::Exec exec_;
  std::vector<double> matrix_;
};

/// One-shot application on u's grid.
GridFunction apply_operator(const ProblemSpec& spec, const GreenKernel& kernel, const GridFunction& u);

enum class CertificateMode { uniqueness, positive_existence };
enum class Verdict { unique_solution, exists_positive, no_certificate };
enum class HypothesisStatus { passed, failed, sampled_pass, sampled_fail, assumed, unchecked };

std::string_view to_string(CertificateMode mode);
std::string_view to_string(Verdict verdict);
std::string_view to_string(HypothesisStatus status);

struct Hypothesis {
  std::string name;
  HypothesisStatus status;
  std::string detail;

  bool blocking() const noexcept {
    return status == HypothesisStatus::failed || status == HypothesisStatus::sampled_fail;
  }
};

struct GeraghtyFamilies {
  PsiFunction psi = PsiFunction::identity();
  ThetaFunction theta = ThetaFunction::rational();
  TauRelation tau = TauRelation::product();
};

struct Certificate {
  CertificateMode mode = CertificateMode::uniqueness;
  double mu = 0.0;
  double beta_bound = 0.0;
  std::optional<double> g_sup;
  double uniqueness_threshold = 0.0;
  std::optional<double> lambda;
  std::optional<ContractionVerdict> contraction;
  std::optional<GeraghtyVerdict> geraghty;
  std::optional<AdmissibilityVerdict> admissibility;
  Verdict verdict = Verdict::no_certificate;
  std::vector<Hypothesis> hypotheses;

  bool certified() const noexcept { return verdict != Verdict::no_certificate; }
  const Hypothesis* find(std::string_view name) const;
};

/// mu Gamma(alpha) / (sqrt(2) Phi(1)^(alpha-1) phi'(1)).
double uniqueness_threshold(const GreenKernel& kernel);
/// (g_sup phi'(1) Phi(1)^(alpha-1) / (mu Gamma(alpha)))^2.
double contraction_constant(const GreenKernel& kernel, double g_sup);
/// max of g over the grid nodes and both endpoints.
double g_sup_norm(const std::function<double(double)>& g, const QuadratureGrid& grid);

inline constexpr std::size_t kDefaultSamplePairs = 50;

/// Uniqueness mode needs spec.g; positive-existence mode needs families and
/// f_domain == nonnegative (ConfigError otherwise). When `samples` is empty a
/// suite of kDefaultSamplePairs nonnegative pairs is drawn with sample_seed().
Certificate build_certificate(const IntegralOperator& op, CertificateMode mode,
                              const std::optional<GeraghtyFamilies>& families = std::nullopt,
                              const SamplePairs& samples = {});
Certificate build_certificate(const ProblemSpec& spec, const GreenKernel& kernel, const GridPtr& grid,
                              CertificateMode mode,
                              const std::optional<GeraghtyFamilies>& families = std::nullopt,
                              const SamplePairs& samples = {});

struct BoundaryResiduals {
  double u_at_zero = 0.0;          // |u(0)|
  double slope_at_zero = 0.0;      // |u'(0)|
  double three_point = 0.0;        // |u'(1) - beta u(eta)|
};

struct ResidualReport {
  double fixed_point_residual = 0.0;  // sup over nodes |Au - u|
  BoundaryResiduals boundary;
};

/// Step used by the one-sided five-point derivative stencils at t = 0 and t = 1.
inline constexpr double kBoundaryStep = 1e-3;

/// Boundary values come from applying A at auxiliary points, not from interpolating u.
ResidualReport residual_report(const IntegralOperator& op, const GridFunction& u);
ResidualReport residual_report(const ProblemSpec& spec, const GreenKernel& kernel, const GridFunction& u);

struct SolveReport {
  explicit SolveReport(GridFunction initial) : solution(std::move(initial)) {}

  GridFunction solution;
  std::size_t iterations = 0;        // applications of A
  bool converged = false;
  bool certified = false;            // set by callers that hold a passing certificate
  double final_step_distance = 0.0;  // b-metric distance of the last two iterates
  ResidualReport residuals;
  std::vector<double> step_distances;
  std::vector<double> observed_ratios;  // step_distances[k] / step_distances[k-1]
};

/// Default stopping tolerance. It is on the squared (b-metric) scale: 1e-16 here is 1e-8 in sup norm.
inline constexpr double kDefaultTolerance = 1e-16;
inline constexpr std::size_t kDefaultMaxIter = 500;

/// Iterates u_{n+1} = A u_n from u0 until d(u_{n+1}, u_n) < tol or max_iter
/// applications. Non-convergence is reported, not thrown; non-finite iterates
/// throw NumericError.
SolveReport picard_solve(const IntegralOperator& op, const GridFunction& u0, double tol = kDefaultTolerance,
                         std::size_t max_iter = kDefaultMaxIter);
SolveReport picard_solve(const ProblemSpec& spec, const GreenKernel& kernel, const GridFunction& u0,
                         double tol = kDefaultTolerance, std::size_t max_iter = kDefaultMaxIter);

}  // namespace fracbvp
