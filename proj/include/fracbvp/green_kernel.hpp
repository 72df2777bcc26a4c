#pragma once

#include <cstddef>
#include <optional>

#include "fracbvp/kernels.hpp"
#include "fracbvp/special_functions.hpp"

namespace fracbvp {

/// Data of the three-point problem D^(alpha,phi) u + h = 0,
/// u(0) = u'(0) = 0, u'(1) = beta u(eta).
struct BvpParams {
  double alpha = 2.5;
  double beta = 0.0;
  double eta = 0.5;
  PhiMap phi = PhiMap::identity();

  /// Throws ConfigError unless 2 < alpha <= 3, beta >= 0, 0 < eta <= 1.
  void validate() const;
};

/// (alpha-1) phi'(1) Phi(1)^(alpha-2) - beta Phi(eta)^(alpha-1).
double mu(const BvpParams& params);

/// Strict upper bound on beta under which the Green's function is positive:
/// (alpha-1) phi'(1) Phi(1)^(alpha-2) / Phi(eta)^(alpha-1).
double beta_bound(double alpha, double eta, const PhiMap& phi);

/// Branches of the Green's function, in dispatch order.
enum class GreenBranch {
  below_both,   // s <= min(eta, t)
  between_t_eta,  // t <= s <= eta
  between_eta_t,  // eta <= s <= t
  above_both,   // max(eta, t) <= s
};

class GreenKernel {
public:
  /// Throws ConfigError when the params are invalid or mu == 0.
  explicit GreenKernel(BvpParams params);

  const BvpParams& params() const noexcept { return params_; }
  double mu() const noexcept { return mu_; }
  double Phi_one() const noexcept { return Phi_one_; }
  double Phi_eta() const noexcept { return Phi_eta_; }
  double phi_prime_one() const noexcept { return dphi_one_; }
  double gamma_alpha() const noexcept { return gamma_alpha_; }
  double beta_bound() const noexcept { return beta_bound_; }
  /// beta < beta_bound, which also makes mu positive.
  bool positivity_hypothesis() const noexcept { return params_.beta < beta_bound_; }

  /// G(t, s) for t, s in [0,1].
  double operator()(double t, double s) const;
  double green(double t, double s) const { return (*this)(t, s); }
  /// G evaluated from phi-coordinates y_t = phi(t), y_s = phi(s).
  double at_phi(double y_t, double y_s) const;

  static GreenBranch branch_for(double y_t, double y_s, double y_eta) noexcept;
  GreenBranch branch(double t, double s) const;
  /// Formula of one branch evaluated regardless of whether (t, s) lies in it.
  double branch_value(GreenBranch branch, double y_t, double y_s) const;

  /// (alpha-1) phi'(1) (phi(1)-phi(s))^(alpha-2) / (mu Gamma(alpha)), the bound on max_t G(t, s).
  double max_bound(double s) const;

  /// Natural magnitude of G, used to scale continuity tolerances.
  double scale() const noexcept;

private:
  BvpParams params_;
  double phi0_, phi1_, phi_eta_;
  double Phi_one_, Phi_eta_, dphi_one_;
  double mu_, gamma_alpha_, inv_norm_, beta_bound_;
};

double green(const GreenKernel& kernel, double t, double s);
double green_max_bound(const GreenKernel& kernel, double s);

struct KernelCheck {
  std::size_t gridsize = 0;
  bool hypothesis_holds = false;  // beta < beta_bound
  bool positivity = false;
  bool continuity = false;
  bool max_bound = false;
  double min_value = 0.0;
  double min_at_t = 0.0, min_at_s = 0.0;
  double max_seam_jump = 0.0;  // relative to kernel scale
  double worst_bound_excess = 0.0;  // max of G - bound; <= tolerance on success
  double seam_tolerance = 1e-8;
  double bound_tolerance = 1e-12;

  bool passed() const noexcept { return hypothesis_holds && positivity && continuity && max_bound; }
};

/// Samples the interior grid {1/(n+1), ..., n/(n+1)}^2 and checks positivity,
/// continuity across the seams s = t and s = eta (relative jump <= seam_tol)
/// and G(t,s) <= max_bound(s) + bound_tol. Mathematical failures are reported,
/// never thrown.
KernelCheck check_kernel_properties(const GreenKernel& kernel, std::size_t gridsize = 200,
                                    double seam_tol = 1e-8, double bound_tol = 1e-12,
                                    kernels::Exec exec = kernels::kDefaultExec);

}  // namespace fracbvp
