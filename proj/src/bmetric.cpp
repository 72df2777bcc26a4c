#include "fracbvp/bmetric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <random>

#include "fracbvp/errors.hpp"

namespace fracbvp {

double distance(const GridFunction& x, const GridFunction& y) {
  x.require_same_grid(y);
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    d = std::max(d, diff * diff);
  }
  return d;
}

PsiFunction PsiFunction::identity() { return {"psi(t)=t", [](double x) { return x; }}; }

ThetaFunction ThetaFunction::rational() {
  return {"theta(t)=(1+t^2)/(6+4t^2)", [](double x) { return (1.0 + x * x) / (6.0 + 4.0 * x * x); }};
}

TauRelation TauRelation::product() {
  return {"tau(x,y)=xy", [](double x, double y) { return x * y; }, true};
}

bool TauRelation::holds(const GridFunction& u, const GridFunction& v) const {
  u.require_same_grid(v);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!(eval(u[i], v[i]) >= 0.0)) return false;
  return true;
}

ContractionVerdict contraction_certificate(double lambda, double r) {
  ContractionVerdict v;
  v.lambda = lambda;
  v.limit = 1.0 / r;
  v.margin = v.limit - lambda;
  v.passed = lambda > 0.0 && lambda < v.limit;
  return v;
}

GeraghtyVerdict geraghty_inequality_check(const Operator& op, const PsiFunction& psi,
                                          const ThetaFunction& theta, const TauRelation& tau,
                                          const SamplePairs& samples, double r) {
  GeraghtyVerdict out;
  out.pairs = samples.size();
  bool first = true;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& [u, v] = samples[k];
    if (!tau.holds(u, v)) continue;
    ++out.admissible_pairs;
    const double d_in = distance(u, v);
    const double d_out = distance(op(u), op(v));
    const double lhs = psi(r * r * r * d_out);
    const double psi_in = psi(d_in);
    const double rhs = theta(psi_in) * psi_in;
    const double margin = rhs - lhs;
    if (first || margin < out.worst_margin) {
      first = false;
      out.worst_margin = margin;
      out.worst_pair = k;
      out.worst_lhs = lhs;
      out.worst_rhs = rhs;
    }
  }
  out.passed = out.worst_margin >= 0.0;
  return out;
}

AdmissibilityVerdict admissibility_check(const Operator& op, const TauRelation& tau, const SamplePairs& samples) {
  AdmissibilityVerdict out;
  out.pairs = samples.size();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& [u, v] = samples[k];
    if (!tau.holds(u, v)) continue;
    ++out.admissible_pairs;
    const GridFunction au = op(u), av = op(v);
    bool violated = false;
    for (std::size_t i = 0; i < au.size(); ++i) {
      const double value = tau(au[i], av[i]);
      if (value < out.worst_value) {
        out.worst_value = value;
        out.worst_pair = k;
      }
      if (!(value >= 0.0)) violated = true;
    }
    if (violated) ++out.violations;
  }
  out.passed = out.violations == 0;
  return out;
}

std::vector<double> family_samples() {
  std::vector<double> xs{0.0};
  for (int k = 0; k <= 120; ++k) xs.push_back(std::pow(10.0, -6.0 + 9.0 * k / 120.0));
  return xs;
}

FamilyCheck check_psi_family(const PsiFunction& psi, std::span<const double> xs, std::span<const double> taus) {
  std::vector<double> defaults;
  if (xs.empty()) {
    defaults = family_samples();
    xs = defaults;
  }
  FamilyCheck out;
  auto fail = [&](std::string what) {
    if (out.passed) out.failure = std::move(what);
    out.passed = false;
  };
  if (psi(0.0) != 0.0) fail("psi(0) != 0");
  double prev = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double value = psi(x);
    out.max_value = std::max(out.max_value, value);
    if (!(value >= 0.0) || !std::isfinite(value)) fail("psi not a finite nonnegative value");
    if (i > 0 && !(value > prev)) fail("psi not increasing on samples");
    prev = value;
    // continuity proxy: small perturbation, small change
    const double nudge = psi(x + 1e-9 * (1.0 + x));
    if (std::abs(nudge - value) > 1e-6 * (1.0 + std::abs(value))) fail("psi discontinuous on samples");
    for (double tau : taus) {
      const double scaled = psi(tau * x);
      const double slack = 1e-12 * (1.0 + tau * x);
      if (scaled > tau * value + slack) fail("psi(tau x) > tau psi(x)");
      if (tau * value > tau * x + slack) fail("tau psi(x) > tau x");
    }
  }
  return out;
}

FamilyCheck check_theta_family(const ThetaFunction& theta, double r, std::span<const double> xs) {
  std::vector<double> defaults;
  if (xs.empty()) {
    defaults = family_samples();
    xs = defaults;
  }
  FamilyCheck out;
  auto fail = [&](std::string what) {
    if (out.passed) out.failure = std::move(what);
    out.passed = false;
  };
  const double ceiling = 1.0 / (r * r);
  double prev = -1.0;
  for (double x : xs) {
    const double value = theta(x);
    out.max_value = std::max(out.max_value, value);
    if (!(value >= 0.0)) fail("theta negative");
    if (!(value < ceiling)) fail("theta reaches 1/r^2");
    if (value < prev) fail("theta decreasing on samples");
    prev = value;
  }
  return out;
}

std::uint64_t sample_seed() {
  const char* env = std::getenv("FRACBVP_SEED");
  if (env == nullptr) return kDefaultSeed;
  std::uint64_t seed = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, seed);
  if (ec != std::errc() || ptr != end) return kDefaultSeed;
  return seed;
}

std::vector<GridFunction> random_grid_functions(const GridPtr& grid, std::size_t count, std::uint64_t seed,
                                                bool nonnegative) {
  // mt19937_64 output is fixed by the standard; the uniform mapping is done by
  // hand because std::uniform_real_distribution is implementation-defined.
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<GridFunction> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double scale = 3.0 * uniform();
    const double a0 = uniform(), a1 = uniform(), a2 = uniform(), a3 = uniform();
    const double freq = 2.0 * std::numbers::pi * (1.0 + std::floor(3.0 * uniform()));
    const double phase = 2.0 * std::numbers::pi * uniform();
    out.push_back(GridFunction::sample(grid, [&](double s) {
      if (nonnegative)
        return scale * (a0 + a1 * s + a2 * (1 - s) * (1 - s) + a3 * 0.5 * (1.0 + std::sin(freq * s + phase)));
      return scale * ((a0 - 0.5) + (a1 - 0.5) * s + (a2 - 0.5) * (1 - s) * (1 - s) +
                      (a3 - 0.5) * std::sin(freq * s + phase));
    }));
  }
  return out;
}

SamplePairs random_nonnegative_pairs(const GridPtr& grid, std::size_t count, std::uint64_t seed) {
  auto fns = random_grid_functions(grid, 2 * count, seed, true);
  SamplePairs pairs;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) pairs.emplace_back(fns[2 * k], fns[2 * k + 1]);
  return pairs;
}

}  // namespace fracbvp
