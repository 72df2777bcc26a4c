#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracbvp/phi_calculus.hpp"

namespace fracbvp {

/// Relaxation constant of the solver's space (sup-squared distance on C([0,1])).
inline constexpr double kSolverR = 2.0;

/// d(x, y) = max over grid nodes of (x - y)^2. Throws GridMismatch.
double distance(const GridFunction& x, const GridFunction& y);

/// Gauge psi: [0, inf) -> [0, inf), increasing, psi(0) = 0, psi(tau x) <= tau psi(x) <= tau x.
struct PsiFunction {
  std::string name;
  std::function<double(double)> eval;

  double operator()(double x) const { return eval(x); }
  static PsiFunction identity();
};

/// Shrink function theta: [0, inf) -> [0, 1/r^2), nondecreasing.
struct ThetaFunction {
  std::string name;
  std::function<double(double)> eval;

  double operator()(double x) const { return eval(x); }
  /// (1 + t^2) / (6 + 4 t^2)
  static ThetaFunction rational();
};

/// Sign relation generating the admissibility indicator:
/// gamma(u, v) = 1 when tau(u(t), v(t)) >= 0 at every node, else 0.
struct TauRelation {
  std::string name;
  std::function<double(double, double)> eval;
  /// Built-in relations for which the sequential closure condition holds by construction.
  bool closure_by_construction = false;

  double operator()(double x, double y) const { return eval(x, y); }
  bool holds(const GridFunction& u, const GridFunction& v) const;
  /// tau(x, y) = x y
  static TauRelation product();
};

struct ContractionVerdict {
  bool passed = false;
  double lambda = 0.0;
  double limit = 0.0;   // 1/r
  double margin = 0.0;  // limit - lambda
};

/// Passes iff 0 < lambda < 1/r.
ContractionVerdict contraction_certificate(double lambda, double r);

using Operator = std::function<GridFunction(const GridFunction&)>;
using SamplePairs = std::vector<std::pair<GridFunction, GridFunction>>;

struct GeraghtyVerdict {
  bool passed = true;
  std::size_t pairs = 0;
  std::size_t admissible_pairs = 0;  // pairs with tau >= 0 pointwise, i.e. gamma = 1
  double worst_margin = 0.0;         // min over admissible pairs of rhs - lhs
  std::size_t worst_pair = 0;
  double worst_lhs = 0.0, worst_rhs = 0.0;
};

/// For every sampled pair with gamma(u, v) = 1 checks
///   psi(r^3 d(Au, Av)) <= theta(psi(d(u, v))) psi(d(u, v)).
GeraghtyVerdict geraghty_inequality_check(const Operator& op, const PsiFunction& psi,
                                          const ThetaFunction& theta, const TauRelation& tau,
                                          const SamplePairs& samples, double r);

struct AdmissibilityVerdict {
  bool passed = true;
  std::size_t pairs = 0;
  std::size_t admissible_pairs = 0;
  std::size_t violations = 0;
  double worst_value = 0.0;  // most negative tau(Au(t), Av(t)) seen on admissible pairs
  std::size_t worst_pair = 0;
};

/// For each sampled pair with tau(u, v) >= 0 pointwise checks tau(Au, Av) >= 0 pointwise.
AdmissibilityVerdict admissibility_check(const Operator& op, const TauRelation& tau,
                                         const SamplePairs& samples);

struct FamilyCheck {
  bool passed = true;
  std::string failure;  // first violated property, empty on success
  double max_value = 0.0;
};

/// Fixed sample set for family checks: 0 and 121 log-spaced points in [1e-6, 1e3].
std::vector<double> family_samples();
inline constexpr double kFamilyTaus[] = {1.5, 2.0, 10.0};

FamilyCheck check_psi_family(const PsiFunction& psi, std::span<const double> xs = {},
                             std::span<const double> taus = kFamilyTaus);
FamilyCheck check_theta_family(const ThetaFunction& theta, double r, std::span<const double> xs = {});

/// Seed for sampled checks: FRACBVP_SEED when set and parseable, else kDefaultSeed.
inline constexpr std::uint64_t kDefaultSeed = 20240611;
std::uint64_t sample_seed();

/// Smooth random grid functions; nonnegative ones are used for the sampled hypotheses.
std::vector<GridFunction> random_grid_functions(const GridPtr& grid, std::size_t count, std::uint64_t seed,
                                                bool nonnegative);
SamplePairs random_nonnegative_pairs(const GridPtr& grid, std::size_t count, std::uint64_t seed);

}  // namespace fracbvp
