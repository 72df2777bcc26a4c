#pragma once

#include <functional>
#include <string_view>

#include "fracbvp/solver.hpp"

namespace fracbvp::builtin {

/// Linear nonlinearity f(t,u) = c u with c = mu Gamma(alpha) / (16 sqrt(2) phi'(1) Phi(1)^(alpha-1)),
/// computed from `params`. Its Lipschitz envelope is the constant c.
double linear_coefficient(const BvpParams& params);

/// f(t,u) = tan(pi t / 3) cos(u)^2 / 10 - exp(t/2) |u| / (3 (1 + |u|)).
double example42_f(double t, double u);
/// g(t) = tan(pi t / 3) / 5 + exp(t/2) / 3.
double example42_g(double t);

/// alpha = 5/2, phi(t) = sin(pi t / 4), beta = 2, eta = 1/2, linear f on the nonnegative domain.
ProblemSpec example41();
/// alpha = 5/2, phi(t) = sqrt(1 + t) / 2, beta = 4, eta = 1/3.
ProblemSpec example42();

/// Returns f for a built-in tag: "example41", "example42", "zero". Throws ConfigError otherwise.
std::function<double(double, double)> f_by_name(std::string_view name, const BvpParams& params);
/// Returns g for a built-in tag: "example41", "example42", "zero". Throws ConfigError otherwise.
std::function<double(double)> g_by_name(std::string_view name, const BvpParams& params);

}  // namespace fracbvp::builtin
