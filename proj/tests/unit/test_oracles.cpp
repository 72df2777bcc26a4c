#include <doctest.h>

#include <cmath>
#include <vector>

#include "reference_oracles.hpp"

namespace oracle = fracbvp::oracle;

TEST_CASE("gamma quadrature oracle agrees with the C library") {
  for (double x : {0.5, 1.0, 1.5, 2.5, 3.5, 7.25, 10.0})
    CHECK(oracle::gamma_by_quadrature(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
}

TEST_CASE("oracle fractional integral closed forms") {
  const std::vector<double> one{1.0}, ramp{0.0, 1.0};
  for (double alpha : {0.5, 1.0, 2.5})
    for (double t : {0.2, 0.7, 1.0}) {
      const double expected = std::pow(t, alpha) / std::tgamma(alpha + 1.0);
      CHECK(oracle::frac_integral_poly(alpha, one, t) == doctest::Approx(expected).epsilon(1e-15));
    }
  CHECK(oracle::frac_integral_poly(1.0, ramp, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(oracle::frac_integral(1.3, [](double) { return 0.0; }, 0.6) == 0.0);
}

TEST_CASE("oracle trapezoid path matches the closed form") {
  const std::vector<double> cubic{0.3, -1.0, 0.5, 2.0};
  auto u = [](double s) { return 0.3 - s + 0.5 * s * s + 2.0 * s * s * s; };
  for (double alpha : {0.5, 1.5, 2.5})
    for (double t : {0.1, 0.5, 1.0})
      CHECK(std::abs(oracle::frac_integral(alpha, u, t) - oracle::frac_integral_poly(alpha, cubic, t)) < 1e-9);
}

TEST_CASE("classical green oracle hand values") {
  CHECK(oracle::classical_green(0.5, 0.25) == doctest::Approx(0.0625).epsilon(1e-15));
  for (double s : {0.0, 0.3, 1.0}) CHECK(oracle::classical_green(0.0, s) == 0.0);
  for (double t : {0.0, 0.4, 1.0}) CHECK(oracle::classical_green(t, 1.0) == 0.0);
}

TEST_CASE("grid max oracle") {
  CHECK(oracle::grid_max([](double) { return 1.0; }, 7) == 1.0);
  CHECK(oracle::grid_max([](double t) { return t * (1 - t); }, 10001) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("dense integral splits at kinks") {
  auto hat = [](double s) { return std::abs(s - 0.3); };
  const double kink[] = {0.3};
  CHECK(oracle::dense_integral(hat, 1000, kink) == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-12));
}
