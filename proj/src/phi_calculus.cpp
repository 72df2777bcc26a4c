#include "fracbvp/phi_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracbvp/errors.hpp"
#include "fracbvp/kernels.hpp"

namespace fracbvp {

namespace {

const double kGaussOffset = 0.5 / std::sqrt(3.0);

// Symmetric grading map of [0,1] onto itself, exponent 2 toward both ends.
double graded(double x) {
  if (x <= 0.5) return 0.5 * (2.0 * x) * (2.0 * x);
  const double r = 2.0 * (1.0 - x);
  return 1.0 - 0.5 * r * r;
}

// Two-point Gauss on `panels` graded panels of [a, b].
template <typename Fn>
double graded_gauss(double a, double b, std::size_t panels, Fn&& fn) {
  const double len = b - a;
  double sum = 0.0;
  double left = a;
  for (std::size_t p = 0; p < panels; ++p) {
    const double right = p + 1 == panels
                             ? b
                             : a + len * graded(static_cast<double>(p + 1) / static_cast<double>(panels));
    const double h = right - left;
    const double mid = 0.5 * (left + right);
    sum += 0.5 * h * (fn(mid - kGaussOffset * h) + fn(mid + kGaussOffset * h));
    left = right;
  }
  return sum;
}

// Value of u at the point with phi-coordinate y of `phi`, which may differ
// from the map the grid was built with.
double value_at(const PhiMap& phi, const GridFunction& u, double y) {
  if (phi.same_map(u.grid().phi())) return u.at_phi(y);
  return u.at(phi.inverse(y));
}

}  // namespace

QuadratureGrid::QuadratureGrid(PhiMap phi, std::size_t size) : phi_(std::move(phi)) {
  if (size < 8 || size % 2 != 0) {
    std::ostringstream os;
    os << "quadrature grid size must be even and >= 8, got " << size;
    throw ConfigError(os.str());
  }
  const std::size_t panels = size / 2;
  const double y0 = phi_.at_zero();
  const double len = phi_.at_one() - y0;
  nodes_.reserve(size);
  phi_nodes_.reserve(size);
  weights_.reserve(size);
  double left = y0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double right = p + 1 == panels
                             ? phi_.at_one()
                             : y0 + len * graded(static_cast<double>(p + 1) / static_cast<double>(panels));
    const double h = right - left;
    const double mid = 0.5 * (left + right);
    for (double y : {mid - kGaussOffset * h, mid + kGaussOffset * h}) {
      phi_nodes_.push_back(y);
      nodes_.push_back(phi_.inverse(y));
      weights_.push_back(0.5 * h);
    }
    left = right;
  }
}

double QuadratureGrid::interpolate_at_phi(std::span<const double> values, double y) const {
  const std::size_t n = phi_nodes_.size();
  auto it = std::upper_bound(phi_nodes_.begin(), phi_nodes_.end(), y);
  const auto k = static_cast<std::ptrdiff_t>(it - phi_nodes_.begin());
  const std::size_t j0 = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k - 2, 0, static_cast<std::ptrdiff_t>(n) - 4));
  const double* x = phi_nodes_.data() + j0;
  const double* v = values.data() + j0;
  double sum = 0.0;
  for (int a = 0; a < 4; ++a) {
    double basis = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) basis *= (y - x[b]) / (x[a] - x[b]);
    sum += basis * v[a];
  }
  return sum;
}

bool QuadratureGrid::same_as(const QuadratureGrid& other) const noexcept {
  return this == &other || (phi_.same_map(other.phi_) && phi_nodes_ == other.phi_nodes_);
}

GridPtr make_grid(PhiMap phi, std::size_t size) {
  return std::make_shared<const QuadratureGrid>(std::move(phi), size);
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ConfigError("grid function without a grid");
  if (values_.size() != grid_->size()) throw ConfigError("grid function: value count does not match grid size");
  for (double v : values_)
    if (!std::isfinite(v)) throw NumericError("grid function: non-finite value");
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(double)>& fn) {
  std::vector<double> values;
  values.reserve(grid->size());
  for (double s : grid->nodes()) values.push_back(fn(s));
  return GridFunction(std::move(grid), std::move(values));
}

GridFunction GridFunction::constant(GridPtr grid, double value) {
  const std::size_t n = grid->size();
  return GridFunction(std::move(grid), std::vector<double>(n, value));
}

double GridFunction::at(double t) const { return at_phi(grid_->phi().eval(t)); }

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
  return grid_ == other.grid_ || grid_->same_as(*other.grid_);
}

void GridFunction::require_same_grid(const GridFunction& other) const {
  if (!same_grid(other)) throw GridMismatch();
}

GridFunction linear_combination(double a, const GridFunction& u, double b, const GridFunction& v) {
  u.require_same_grid(v);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * u[i] + b * v[i];
  return GridFunction(u.grid_ptr(), std::move(out));
}

double frac_integral_at_phi(double alpha, const PhiMap& phi, const GridFunction& u, double upper) {
  if (!(alpha > 0.0)) throw DomainError("fractional integral: order must be positive");
  const double y0 = phi.at_zero();
  const double len = upper - y0;
  if (!(len > 0.0)) return 0.0;
  const std::size_t half_panels = std::max<std::size_t>(u.grid().panels() / 2, 2);
  const double half = 0.5 * len;

  // [y0, y0 + len/2]: kernel is smooth there
  const double lower = graded_gauss(y0, y0 + half, half_panels, [&](double y) {
    return std::pow(upper - y, alpha - 1.0) * value_at(phi, u, y);
  });

  // [upper - len/2, upper] with z = upper - y = half * x^m
  double near = 0.0;
  if (alpha < 1.0) {
    // m = 1/alpha cancels z^(alpha-1) dz exactly
    const double m = 1.0 / alpha;
    near = std::pow(half, alpha) / alpha *
           graded_gauss(0.0, 1.0, half_panels,
                        [&](double x) { return value_at(phi, u, upper - half * std::pow(x, m)); });
  } else {
    near = 2.0 * std::pow(half, alpha) *
           graded_gauss(0.0, 1.0, half_panels, [&](double x) {
             return std::pow(x, 2.0 * alpha - 1.0) * value_at(phi, u, upper - half * x * x);
           });
  }
  return (lower + near) / gamma(alpha);
}

double frac_integral(double alpha, const PhiMap& phi, const GridFunction& u, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "fractional integral: t must lie in [0,1], got " << t;
    throw DomainError(os.str());
  }
  return frac_integral_at_phi(alpha, phi, u, phi.eval(t));
}

GridFunction frac_integral_on_grid(double alpha, const PhiMap& phi, const GridFunction& u) {
  std::vector<double> out(u.size());
  const auto nodes = u.grid().nodes();
  kernels::tabulate(out, [&](std::size_t i) { return frac_integral(alpha, phi, u, nodes[i]); });
  return GridFunction(u.grid_ptr(), std::move(out));
}

double frac_derivative(double alpha, const PhiMap& phi, const GridFunction& u, double t) {
  if (!(alpha > 0.0)) throw DomainError("fractional derivative: order must be positive");
  const int n = static_cast<int>(std::floor(alpha)) + 1;
  if (n > 3) throw DomainError("fractional derivative: floor(alpha) + 1 must not exceed 3");
  if (!(t > 0.0 && t < 1.0)) {
    std::ostringstream os;
    os << "fractional derivative: t must lie in (0,1), got " << t;
    throw DomainError(os.str());
  }
  const double order = static_cast<double>(n) - alpha;
  const double y = phi.eval(t);
  const double room = std::min(y - phi.at_zero(), phi.at_one() - y);
  const int reach = n == 3 ? 3 : 2;
  const double h = std::min(0.02 * (phi.at_one() - phi.at_zero()), room / (reach + 0.5));

  // order == n - alpha is in (0, 1]; alpha integer gives an ordinary integral
  auto F = [&](int k) { return frac_integral_at_phi(order, phi, u, y + k * h); };

  switch (n) {
    case 1:
      return (F(-2) - 8.0 * F(-1) + 8.0 * F(1) - F(2)) / (12.0 * h);
    case 2:
      return (-F(-2) + 16.0 * F(-1) - 30.0 * F(0) + 16.0 * F(1) - F(2)) / (12.0 * h * h);
    default:
      return (F(-3) - 8.0 * F(-2) + 13.0 * F(-1) - 13.0 * F(1) + 8.0 * F(2) - F(3)) / (8.0 * h * h * h);
  }
}

double semigroup_defect(double alpha, double beta, const PhiMap& phi, const GridFunction& u,
                        std::span<const double> test_points) {
  std::vector<double> defaults;
  if (test_points.empty()) {
    for (int i = 0; i <= 32; ++i) defaults.push_back(i / 32.0);
    test_points = defaults;
  }
  const GridFunction inner = frac_integral_on_grid(beta, phi, u);
  std::vector<double> defect(test_points.size());
  kernels::tabulate(defect, [&](std::size_t i) {
    const double t = test_points[i];
    return std::abs(frac_integral(alpha, phi, inner, t) - frac_integral(alpha + beta, phi, u, t));
  });
  return defect.empty() ? 0.0 : *std::max_element(defect.begin(), defect.end());
}

}  // namespace fracbvp
