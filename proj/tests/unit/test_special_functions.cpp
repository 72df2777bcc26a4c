#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fracbvp/errors.hpp"
#include "fracbvp/special_functions.hpp"
#include "reference_oracles.hpp"

using namespace fracbvp;

TEST_CASE("gamma at integers and half integers") {
  CHECK(fracbvp::gamma(1.0) == 1.0);
  CHECK(fracbvp::gamma(3.0) == 2.0);
  CHECK(fracbvp::gamma(2.5) == doctest::Approx(oracle::gamma_by_quadrature(2.5)).epsilon(1e-13));
  CHECK(fracbvp::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("gamma matches the quadrature oracle on [0.5, 10]") {
  for (double x = 0.5; x <= 10.0; x += 0.25)
    CHECK(fracbvp::gamma(x) == doctest::Approx(oracle::gamma_by_quadrature(x)).epsilon(1e-12));
}

TEST_CASE("gamma recurrence") {
  for (double x = 0.5; x <= 9.0; x += 0.01) {
    const double lhs = fracbvp::gamma(x + 1.0), rhs = x * fracbvp::gamma(x);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
  }
}

TEST_CASE("gamma below one half uses the reflection-free recurrence") {
  CHECK(fracbvp::gamma(0.25) == doctest::Approx(std::tgamma(0.25)).epsilon(1e-13));
  CHECK(fracbvp::gamma(1e-3) == doctest::Approx(std::tgamma(1e-3)).epsilon(1e-13));
}

TEST_CASE("gamma domain errors") {
  CHECK_THROWS_AS(fracbvp::gamma(0.0), DomainError);
  CHECK_THROWS_AS(fracbvp::gamma(-1.5), DomainError);
  CHECK_THROWS_AS(fracbvp::gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(fracbvp::gamma(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("catalog maps") {
  const auto id = PhiMap::identity();
  CHECK(id.eval(0.3) == 0.3);
  CHECK(id.deriv(0.3) == 1.0);

  const auto sq = PhiMap::sin_quarter_pi();
  CHECK(sq.eval(1.0) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(sq.at_zero() == 0.0);

  const auto sh = PhiMap::sqrt_half();
  CHECK(sh.eval(0.0) == 0.5);
  CHECK(sh.eval(1.0) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(sh.shifted(0.0) == 0.0);
}

namespace {

PhiMap curved_table() {
  std::vector<double> t, y;
  for (int i = 0; i <= 20; ++i) {
    const double s = i / 20.0;
    t.push_back(s);
    y.push_back(std::exp(s) + 0.3 * s * s);
  }
  return PhiMap::table(t, y);
}

// Tables are only C1 at the knots, so their difference quotients get a looser bound.
void check_map_invariants(const PhiMap& phi, double fd_tol = 1e-6) {
  CAPTURE(to_string(phi.kind()));
  double prev = phi.eval(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double t = i / 1000.0;
    const double y = phi.eval(t);
    CHECK(y > prev);
    prev = y;
    CHECK(phi.deriv(t) > 0.0);
    CHECK(std::abs(phi.inverse(y) - t) < 1e-10);
  }
  const double h = 1e-6;
  for (int i = 1; i < 50; ++i) {
    const double t = i / 50.0;
    const double fd = (phi.eval(t + h) - phi.eval(t - h)) / (2 * h);
    CHECK(std::abs(fd - phi.deriv(t)) < fd_tol);
  }
  CHECK(phi.inverse(phi.at_zero() - 1.0) == 0.0);
  CHECK(phi.inverse(phi.at_one() + 1.0) == 1.0);
}

}  // namespace

TEST_CASE("phi maps are increasing with consistent derivative and inverse") {
  check_map_invariants(PhiMap::identity());
  check_map_invariants(PhiMap::sin_quarter_pi());
  check_map_invariants(PhiMap::sqrt_half());
  check_map_invariants(curved_table(), 1e-4);
}

TEST_CASE("table map interpolates its samples") {
  const std::vector<double> t{0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> y{0.0, 0.1, 0.5, 0.6, 2.0};
  const auto phi = PhiMap::table(t, y);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(phi.eval(t[i]) == doctest::Approx(y[i]).epsilon(1e-15));
  check_map_invariants(phi, 1e-4);
}

TEST_CASE("table map rejects bad data") {
  const std::vector<double> ok_t{0.0, 0.3, 0.6, 1.0}, ok_y{0.0, 1.0, 2.0, 3.0};
  CHECK_NOTHROW(PhiMap::table(ok_t, ok_y));
  const std::vector<double> three{0.0, 0.5, 1.0};
  CHECK_THROWS_AS(PhiMap::table(three, three), ConfigError);
  const std::vector<double> shifted{0.1, 0.3, 0.6, 1.0};
  CHECK_THROWS_AS(PhiMap::table(shifted, ok_y), ConfigError);
  const std::vector<double> short_end{0.0, 0.3, 0.6, 0.9};
  CHECK_THROWS_AS(PhiMap::table(short_end, ok_y), ConfigError);
  const std::vector<double> flat{0.0, 1.0, 1.0, 3.0};
  CHECK_THROWS_AS(PhiMap::table(ok_t, flat), ConfigError);
  const std::vector<double> nan_y{0.0, std::nan(""), 2.0, 3.0};
  CHECK_THROWS_AS(PhiMap::table(ok_t, nan_y), ConfigError);
  const std::vector<double> mismatched{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(PhiMap::table(ok_t, mismatched), ConfigError);
}

TEST_CASE("phi kind names round trip") {
  for (auto kind : {PhiKind::identity, PhiKind::sin_quarter_pi, PhiKind::sqrt_half, PhiKind::table})
    CHECK(phi_kind_from_string(to_string(kind)) == kind);
  CHECK_THROWS_AS(phi_kind_from_string("cubic"), ConfigError);
  CHECK(phi_catalog(PhiKind::sqrt_half).eval(0.0) == 0.5);
  CHECK_THROWS_AS(phi_catalog(PhiKind::table), ConfigError);
}

TEST_CASE("same_map distinguishes catalog entries and tables") {
  CHECK(PhiMap::identity().same_map(PhiMap::identity()));
  CHECK_FALSE(PhiMap::identity().same_map(PhiMap::sqrt_half()));
  const auto a = curved_table();
  const auto copy = a;
  CHECK(a.same_map(copy));
  CHECK_FALSE(a.same_map(curved_table()));
}
