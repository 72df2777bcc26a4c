#include "fracbvp/builtin_problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracbvp/errors.hpp"

namespace fracbvp::builtin {

double linear_coefficient(const BvpParams& params) {
  const double phi1 = params.phi.shifted(1.0);
  return mu(params) * gamma(params.alpha) /
         (16.0 * std::sqrt(2.0) * params.phi.deriv(1.0) * std::pow(phi1, params.alpha - 1.0));
}

double example42_f(double t, double u) {
  const double c = std::cos(u);
  const double a = std::abs(u);
  return 0.1 * std::tan(std::numbers::pi * t / 3.0) * c * c - std::exp(0.5 * t) / 3.0 * a / (1.0 + a);
}

double example42_g(double t) {
  return 0.2 * std::tan(std::numbers::pi * t / 3.0) + std::exp(0.5 * t) / 3.0;
}

ProblemSpec example41() {
  ProblemSpec spec;
  spec.params = {.alpha = 2.5, .beta = 2.0, .eta = 0.5, .phi = PhiMap::sin_quarter_pi()};
  spec.f = f_by_name("example41", spec.params);
  spec.g = g_by_name("example41", spec.params);
  spec.f_domain = FDomain::nonnegative;
  return spec;
}

ProblemSpec example42() {
  ProblemSpec spec;
  spec.params = {.alpha = 2.5, .beta = 4.0, .eta = 1.0 / 3.0, .phi = PhiMap::sqrt_half()};
  spec.f = example42_f;
  spec.g = example42_g;
  spec.f_domain = FDomain::real;
  return spec;
}

std::function<double(double, double)> f_by_name(std::string_view name, const BvpParams& params) {
  if (name == "example41") {
    const double c = linear_coefficient(params);
    return [c](double, double u) { return c * u; };
  }
  if (name == "example42") return example42_f;
  if (name == "zero") return [](double, double) { return 0.0; };
  throw ConfigError("unknown built-in f '" + std::string(name) + "'");
}

std::function<double(double)> g_by_name(std::string_view name, const BvpParams& params) {
  if (name == "example41") {
    const double c = std::abs(linear_coefficient(params));
    return [c](double) { return c; };
  }
  if (name == "example42") return example42_g;
  if (name == "zero") return [](double) { return 0.0; };
  throw ConfigError("unknown built-in g '" + std::string(name) + "'");
}

}  // namespace fracbvp::builtin
