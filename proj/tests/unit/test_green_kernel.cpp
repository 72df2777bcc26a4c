#include <doctest.h>

#include <cmath>

#include "fracbvp/errors.hpp"
#include "fracbvp/green_kernel.hpp"
#include "reference_oracles.hpp"

using namespace fracbvp;

namespace {

BvpParams example41_params() { return {2.5, 2.0, 0.5, PhiMap::sin_quarter_pi()}; }
BvpParams example42_params() { return {2.5, 4.0, 1.0 / 3.0, PhiMap::sqrt_half()}; }
BvpParams classical_params() { return {3.0, 0.0, 0.5, PhiMap::identity()}; }

}  // namespace

TEST_CASE("mu values") {
  // Printed values, then the same quantities to eight digits from an independent evaluation.
  CHECK(std::abs(mu(example41_params()) - 0.22703) < 1e-4);
  CHECK(std::abs(mu(example42_params()) - 0.0346236) < 1e-4);
  CHECK(mu(example41_params()) == doctest::Approx(0.22703406).epsilon(1e-7));
  CHECK(mu(example42_params()) == doctest::Approx(0.034623554).epsilon(1e-7));
  for (double eta : {0.1, 0.5, 0.9}) CHECK(mu({2.7, 0.0, eta, PhiMap::identity()}) == doctest::Approx(1.7));
}

TEST_CASE("beta bound values") {
  CHECK(std::abs(beta_bound(2.5, 0.5, PhiMap::sin_quarter_pi()) - 2.95903) < 1e-4);
  CHECK(std::abs(beta_bound(2.5, 1.0 / 3.0, PhiMap::sqrt_half()) - 5.60946) < 1e-4);
  CHECK(beta_bound(2.5, 0.5, PhiMap::sin_quarter_pi()) == doctest::Approx(2.9590285).epsilon(1e-7));
  CHECK(beta_bound(2.5, 1.0 / 3.0, PhiMap::sqrt_half()) == doctest::Approx(5.6094552).epsilon(1e-7));
  CHECK(beta_bound(2.3, 1.0, PhiMap::identity()) == doctest::Approx(1.3));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(GreenKernel({2.0, 0.0, 0.5, PhiMap::identity()}), ConfigError);
  CHECK_THROWS_AS(GreenKernel({3.1, 0.0, 0.5, PhiMap::identity()}), ConfigError);
  CHECK_THROWS_AS(GreenKernel({2.5, 0.0, 0.0, PhiMap::identity()}), ConfigError);
  CHECK_THROWS_AS(GreenKernel({2.5, -1.0, 0.5, PhiMap::identity()}), ConfigError);
  CHECK_NOTHROW(GreenKernel({3.0, 0.0, 1.0, PhiMap::identity()}));
}

TEST_CASE("mu = 0 is a configuration error") {
  CHECK_THROWS_AS(GreenKernel({3.0, 2.0, 1.0, PhiMap::identity()}), ConfigError);
}

TEST_CASE("negative mu still evaluates but fails the positivity hypothesis") {
  const GreenKernel kernel({3.0, 3.0, 1.0, PhiMap::identity()});
  CHECK(kernel.mu() == doctest::Approx(-1.0));
  CHECK(std::isfinite(kernel(0.4, 0.3)));
  CHECK_FALSE(kernel.positivity_hypothesis());
  CHECK_FALSE(check_kernel_properties(kernel, 20).passed());
}

TEST_CASE("green vanishes on t = 0 and s = 1") {
  for (const auto& params : {example41_params(), example42_params(), classical_params()}) {
    const GreenKernel kernel(params);
    for (double s : {0.1, 0.5, 0.9, 1.0}) CHECK(kernel(0.0, s) == 0.0);
    for (double t : {0.0, 0.2, 0.6, 1.0}) CHECK(kernel(t, 1.0) == 0.0);
  }
}

TEST_CASE("classical reduction") {
  const GreenKernel kernel(classical_params());
  CHECK(kernel(0.5, 0.25) == doctest::Approx(0.0625).epsilon(1e-15));
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const double t = i / 49.0, s = j / 49.0;
      CHECK(std::abs(kernel(t, s) - oracle::classical_green(t, s)) < 1e-12);
    }
  // beta = 0 removes the eta dependence.
  const GreenKernel other({3.0, 0.0, 0.2, PhiMap::identity()});
  CHECK(other(0.7, 0.4) == doctest::Approx(kernel(0.7, 0.4)).epsilon(1e-15));
}

TEST_CASE("max bound") {
  const GreenKernel classical(classical_params());
  CHECK(classical.max_bound(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(green_max_bound(classical, 1.0) == 0.0);
  CHECK(green_max_bound(classical, 1.0 - 1e-9) < 1e-8);

  const GreenKernel ex41(example41_params());
  const double brute = oracle::grid_max([&](double t) { return green(ex41, t, 0.5); }, 10000);
  CHECK(brute > 0.0);
  CHECK(brute <= ex41.max_bound(0.5));
}

TEST_CASE("branch dispatch order") {
  const GreenKernel kernel(example41_params());
  CHECK(kernel.branch(0.8, 0.2) == GreenBranch::below_both);
  CHECK(kernel.branch(0.2, 0.4) == GreenBranch::between_t_eta);
  CHECK(kernel.branch(0.8, 0.6) == GreenBranch::between_eta_t);
  CHECK(kernel.branch(0.3, 0.7) == GreenBranch::above_both);
  // ties go to the first matching region
  CHECK(kernel.branch(0.5, 0.5) == GreenBranch::below_both);
  CHECK(kernel.branch(0.3, 0.3) == GreenBranch::below_both);
  CHECK(kernel.branch(0.3, 0.5) == GreenBranch::between_t_eta);
  CHECK(kernel.branch(0.7, 0.7) == GreenBranch::between_eta_t);
  CHECK_THROWS_AS(kernel(1.2, 0.5), DomainError);
  CHECK_THROWS_AS(kernel(0.5, -0.1), DomainError);
}

TEST_CASE("kernel property suite on both example configurations") {
  for (const auto& params : {example41_params(), example42_params()}) {
    const GreenKernel kernel(params);
    const auto check = check_kernel_properties(kernel, 200, 1e-10, 1e-12);
    CHECK(check.hypothesis_holds);
    CHECK(check.positivity);
    CHECK(check.continuity);
    CHECK(check.max_bound);
    CHECK(check.min_value > 0.0);
    CHECK(check.max_seam_jump <= 1e-10);
    CHECK(check.worst_bound_excess <= 1e-12);
  }
}

TEST_CASE("beta above the bound is flagged") {
  auto params = example41_params();
  params.beta = 3.5;
  const GreenKernel kernel(params);
  CHECK_FALSE(kernel.positivity_hypothesis());
  const auto check = check_kernel_properties(kernel);
  CHECK_FALSE(check.hypothesis_holds);
  CHECK_FALSE(check.passed());
}

TEST_CASE("serial and parallel property scans agree") {
  const GreenKernel kernel(example42_params());
  const auto a = check_kernel_properties(kernel, 120, 1e-10, 1e-12, kernels::Exec::serial);
  const auto b = check_kernel_properties(kernel, 120, 1e-10, 1e-12, kernels::Exec::parallel);
  CHECK(a.min_value == b.min_value);
  CHECK(a.max_seam_jump == b.max_seam_jump);
  CHECK(a.worst_bound_excess == b.worst_bound_excess);
  CHECK(a.passed() == b.passed());
}
