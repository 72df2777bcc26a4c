#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fracbvp/special_functions.hpp"

namespace fracbvp {

enum class QuadratureScheme { graded_gauss };

/// Two-point Gauss rule on a mesh in y = phi(s), graded (exponent 2) toward
/// both ends of [phi(0), phi(1)]. Weights are in the y measure, so
/// sum(w_j * h(s_j)) approximates the integral of phi'(s) h(s) over [0,1].
class QuadratureGrid {
public:
  static constexpr double kGrading = 2.0;
  static constexpr std::size_t kDefaultSize = 2048;

  /// `size` is the node count; it must be even and at least 8 (two nodes per panel).
  QuadratureGrid(PhiMap phi, std::size_t size = kDefaultSize);

  const PhiMap& phi() const noexcept { return phi_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t panels() const noexcept { return nodes_.size() / 2; }
  QuadratureScheme scheme() const noexcept { return QuadratureScheme::graded_gauss; }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> phi_nodes() const noexcept { return phi_nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Local cubic Lagrange interpolation in y through the four nearest nodes.
  /// Outside the node range the end stencil extrapolates.
  double interpolate_at_phi(std::span<const double> values, double y) const;

  bool same_as(const QuadratureGrid& other) const noexcept;

private:
  PhiMap phi_;
  std::vector<double> nodes_;
  std::vector<double> phi_nodes_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

GridPtr make_grid(PhiMap phi, std::size_t size = QuadratureGrid::kDefaultSize);

/// A function sampled at the nodes of a quadrature grid.
class GridFunction {
public:
  GridFunction(GridPtr grid, std::vector<double> values);
  /// Samples fn(s) at every node.
  static GridFunction sample(GridPtr grid, const std::function<double(double)>& fn);
  static GridFunction constant(GridPtr grid, double value);

  const QuadratureGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Interpolated value at t in [0,1].
  double at(double t) const;
  double at_phi(double y) const { return grid_->interpolate_at_phi(values_, y); }

  bool same_grid(const GridFunction& other) const noexcept;
  /// Throws GridMismatch when the grids differ.
  void require_same_grid(const GridFunction& other) const;

private:
  GridPtr grid_;
  std::vector<double> values_;
};

GridFunction linear_combination(double a, const GridFunction& u, double b, const GridFunction& v);

/// phi-Riemann-Liouville fractional integral of order alpha of u at t:
///   (1/Gamma(alpha)) * int_0^t phi'(s) (phi(t)-phi(s))^(alpha-1) u(s) ds.
/// Evaluated in y = phi(s) on graded panels (as many as the grid has); near
/// y = phi(t) the substitution z = c * x^m removes the kernel singularity.
double frac_integral(double alpha, const PhiMap& phi, const GridFunction& u, double t);

/// Same integral with the upper limit given directly in the phi coordinate.
double frac_integral_at_phi(double alpha, const PhiMap& phi, const GridFunction& u, double upper);

/// Fractional integral evaluated at every grid node.
GridFunction frac_integral_on_grid(double alpha, const PhiMap& phi, const GridFunction& u);

/// phi-Riemann-Liouville fractional derivative ((1/phi'(t)) d/dt)^n I^(n-alpha) u (t),
/// n = floor(alpha) + 1 <= 3. The outer operator is d^n/dy^n in y = phi(t),
/// applied with fourth-order central differences. Accuracy is about 1e-6 in
/// the interior and degrades as t approaches 0 or 1 (the stencil shrinks).
double frac_derivative(double alpha, const PhiMap& phi, const GridFunction& u, double t);

/// max over `test_points` of |I^a(I^b u)(t) - I^(a+b) u(t)|. An empty span uses
/// 33 equispaced points on [0,1].
double semigroup_defect(double alpha, double beta, const PhiMap& phi, const GridFunction& u,
                        std::span<const double> test_points = {});

}  // namespace fracbvp
