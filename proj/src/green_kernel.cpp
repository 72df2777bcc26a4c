#include "fracbvp/green_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fracbvp/errors.hpp"
#include "fracbvp/kernels.hpp"

namespace fracbvp {

namespace {

// Exponents are always positive here; a zero (or round-off negative) base gives 0.
double pos_pow(double base, double exponent) {
  return base > 0.0 ? std::pow(base, exponent) : 0.0;
}

}  // namespace

void BvpParams::validate() const {
  std::ostringstream os;
  if (!(alpha > 2.0 && alpha <= 3.0)) os << "alpha must satisfy 2 < alpha <= 3 (got " << alpha << ")";
  else if (!(beta >= 0.0) || !std::isfinite(beta)) os << "beta must be a finite nonnegative number (got " << beta << ")";
  else if (!(eta > 0.0 && eta <= 1.0)) os << "eta must satisfy 0 < eta <= 1 (got " << eta << ")";
  else return;
  throw ConfigError(os.str());
}

double mu(const BvpParams& p) {
  const double Phi1 = p.phi.shifted(1.0);
  const double PhiEta = p.phi.shifted(p.eta);
  return (p.alpha - 1.0) * p.phi.deriv(1.0) * std::pow(Phi1, p.alpha - 2.0) -
         p.beta * std::pow(PhiEta, p.alpha - 1.0);
}

double beta_bound(double alpha, double eta, const PhiMap& phi) {
  return (alpha - 1.0) * phi.deriv(1.0) * std::pow(phi.shifted(1.0), alpha - 2.0) /
         std::pow(phi.shifted(eta), alpha - 1.0);
}

GreenKernel::GreenKernel(BvpParams params) : params_(std::move(params)) {
  params_.validate();
  const PhiMap& phi = params_.phi;
  phi0_ = phi.at_zero();
  phi1_ = phi.at_one();
  phi_eta_ = phi.eval(params_.eta);
  Phi_one_ = phi1_ - phi0_;
  Phi_eta_ = phi_eta_ - phi0_;
  dphi_one_ = phi.deriv(1.0);
  mu_ = fracbvp::mu(params_);
  if (mu_ == 0.0) throw ConfigError("mu = 0: the Green's function requires mu != 0");
  gamma_alpha_ = gamma(params_.alpha);
  inv_norm_ = 1.0 / (mu_ * gamma_alpha_);
  beta_bound_ = fracbvp::beta_bound(params_.alpha, params_.eta, phi);
}

GreenBranch GreenKernel::branch_for(double y_t, double y_s, double y_eta) noexcept {
  if (y_s <= std::min(y_eta, y_t)) return GreenBranch::below_both;
  if (y_t <= y_s && y_s <= y_eta) return GreenBranch::between_t_eta;
  if (y_eta <= y_s && y_s <= y_t) return GreenBranch::between_eta_t;
  return GreenBranch::above_both;
}

GreenBranch GreenKernel::branch(double t, double s) const {
  return branch_for(params_.phi.eval(t), params_.phi.eval(s), phi_eta_);
}

double GreenKernel::branch_value(GreenBranch which, double y_t, double y_s) const {
  const double a = params_.alpha;
  const double lead = pos_pow(y_t - phi0_, a - 1.0);
  const double end_term = (a - 1.0) * dphi_one_ * pos_pow(phi1_ - y_s, a - 2.0);
  switch (which) {
    case GreenBranch::below_both:
      return (lead * (end_term - params_.beta * pos_pow(phi_eta_ - y_s, a - 1.0)) -
              mu_ * pos_pow(y_t - y_s, a - 1.0)) * inv_norm_;
    case GreenBranch::between_t_eta:
      return lead * (end_term - params_.beta * pos_pow(phi_eta_ - y_s, a - 1.0)) * inv_norm_;
    case GreenBranch::between_eta_t:
      return (lead * end_term - mu_ * pos_pow(y_t - y_s, a - 1.0)) * inv_norm_;
    case GreenBranch::above_both:
      return lead * end_term * inv_norm_;
  }
  return 0.0;
}

double GreenKernel::at_phi(double y_t, double y_s) const {
  return branch_value(branch_for(y_t, y_s, phi_eta_), y_t, y_s);
}

double GreenKernel::operator()(double t, double s) const {
  if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0)) {
    std::ostringstream os;
    os << "green: (t, s) must lie in [0,1]^2, got (" << t << ", " << s << ")";
    throw DomainError(os.str());
  }
  return at_phi(params_.phi.eval(t), params_.phi.eval(s));
}

double GreenKernel::max_bound(double s) const {
  return (params_.alpha - 1.0) * dphi_one_ * pos_pow(phi1_ - params_.phi.eval(s), params_.alpha - 2.0) *
         inv_norm_;
}

double GreenKernel::scale() const noexcept {
  return std::abs((params_.alpha - 1.0) * dphi_one_ * std::pow(Phi_one_, params_.alpha - 2.0) * inv_norm_);
}

double green(const GreenKernel& kernel, double t, double s) { return kernel(t, s); }
double green_max_bound(const GreenKernel& kernel, double s) { return kernel.max_bound(s); }

namespace {

struct RowStats {
  double min_value = std::numeric_limits<double>::infinity();
  double min_s = 0.0;
  double max_jump = 0.0;
  double bound_excess = -std::numeric_limits<double>::infinity();
};

}  // namespace

KernelCheck check_kernel_properties(const GreenKernel& kernel, std::size_t gridsize, double seam_tol,
                                    double bound_tol, kernels::Exec exec) {
  KernelCheck out;
  out.gridsize = gridsize;
  out.hypothesis_holds = kernel.positivity_hypothesis();
  out.seam_tolerance = seam_tol;
  out.bound_tolerance = bound_tol;
  if (gridsize == 0) return out;

  const PhiMap& phi = kernel.params().phi;
  const double y_eta = phi.eval(kernel.params().eta);
  const double scale = kernel.scale();
  std::vector<double> pts(gridsize), ypts(gridsize), bounds(gridsize);
  for (std::size_t i = 0; i < gridsize; ++i) {
    pts[i] = static_cast<double>(i + 1) / static_cast<double>(gridsize + 1);
    ypts[i] = phi.eval(pts[i]);
    bounds[i] = kernel.max_bound(pts[i]);
  }

  // one-sided limits taken this far from a seam, in s
  constexpr double kSeamOffset = 1e-12;
  std::vector<RowStats> rows(gridsize);
  kernels::for_each_index(gridsize, [&](std::size_t i) {
    RowStats& r = rows[i];
    const double y_t = ypts[i];
    for (std::size_t j = 0; j < gridsize; ++j) {
      const double g = kernel.at_phi(y_t, ypts[j]);
      if (g < r.min_value) {
        r.min_value = g;
        r.min_s = pts[j];
      }
      r.bound_excess = std::max(r.bound_excess, g - bounds[j]);
    }
    auto seam_jump = [&](double seam_s, GreenBranch left, GreenBranch right) {
      const double y_seam = phi.eval(seam_s);
      double jump = std::abs(kernel.branch_value(left, y_t, y_seam) - kernel.branch_value(right, y_t, y_seam));
      const double lo = std::max(seam_s - kSeamOffset, 0.0), hi = std::min(seam_s + kSeamOffset, 1.0);
      jump = std::max(jump, std::abs(kernel.at_phi(y_t, phi.eval(lo)) - kernel.at_phi(y_t, phi.eval(hi))));
      return jump / scale;
    };
    const double t = pts[i];
    if (y_t <= y_eta) {
      r.max_jump = std::max(seam_jump(t, GreenBranch::below_both, GreenBranch::between_t_eta),
                            seam_jump(kernel.params().eta, GreenBranch::between_t_eta, GreenBranch::above_both));
    } else {
      r.max_jump = std::max(seam_jump(t, GreenBranch::between_eta_t, GreenBranch::above_both),
                            seam_jump(kernel.params().eta, GreenBranch::below_both, GreenBranch::between_eta_t));
    }
  }, exec);

  out.min_value = std::numeric_limits<double>::infinity();
  out.worst_bound_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gridsize; ++i) {
    if (rows[i].min_value < out.min_value) {
      out.min_value = rows[i].min_value;
      out.min_at_t = pts[i];
      out.min_at_s = rows[i].min_s;
    }
    out.max_seam_jump = std::max(out.max_seam_jump, rows[i].max_jump);
    out.worst_bound_excess = std::max(out.worst_bound_excess, rows[i].bound_excess);
  }
  out.positivity = out.min_value > 0.0;
  out.continuity = out.max_seam_jump <= seam_tol;
  out.max_bound = out.worst_bound_excess <= bound_tol;
  return out;
}

}  // namespace fracbvp
