#include "fracbvp/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracbvp/errors.hpp"

namespace fracbvp {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  // valid for x >= 0.5
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "gamma: argument must be positive and finite, got " << x;
    throw DomainError(os.str());
  }
  if (x == std::floor(x) && x <= 21.0) {
    double fact = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) fact *= k;
    return fact;
  }
  if (x < 0.5) return lanczos(x + 1.0) / x;
  return lanczos(x);
}

std::string_view to_string(PhiKind kind) {
  switch (kind) {
    case PhiKind::identity: return "identity";
    case PhiKind::sin_quarter_pi: return "sin_quarter_pi";
    case PhiKind::sqrt_half: return "sqrt_half";
    case PhiKind::table: return "table";
  }
  return "unknown";
}

PhiKind phi_kind_from_string(std::string_view name) {
  if (name == "identity") return PhiKind::identity;
  if (name == "sin_quarter_pi") return PhiKind::sin_quarter_pi;
  if (name == "sqrt_half") return PhiKind::sqrt_half;
  if (name == "table") return PhiKind::table;
  throw ConfigError("unknown phi kind '" + std::string(name) + "'");
}

// Piecewise cubic Hermite data.
struct PhiMap::Table {
  std::vector<double> t, y, d;

  std::size_t segment(double x) const {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t k = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    return std::min(k, t.size() - 2);
  }

  double eval(double x) const {
    const std::size_t k = segment(x);
    const double h = t[k + 1] - t[k];
    const double s = (x - t[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * y[k] + h10 * h * d[k] + h01 * y[k + 1] + h11 * h * d[k + 1];
  }

  double deriv(double x) const {
    const std::size_t k = segment(x);
    const double h = t[k + 1] - t[k];
    const double s = (x - t[k]) / h;
    const double s2 = s * s;
    const double dh00 = (6 * s2 - 6 * s) / h, dh10 = 3 * s2 - 4 * s + 1;
    const double dh01 = (-6 * s2 + 6 * s) / h, dh11 = 3 * s2 - 2 * s;
    return dh00 * y[k] + dh10 * d[k] + dh01 * y[k + 1] + dh11 * d[k + 1];
  }
};

PhiMap::PhiMap(PhiKind kind, std::shared_ptr<const Table> table)
    : kind_(kind), table_(std::move(table)) {
  phi0_ = eval(0.0);
  phi1_ = eval(1.0);
}

PhiMap PhiMap::identity() { return PhiMap(PhiKind::identity); }
PhiMap PhiMap::sin_quarter_pi() { return PhiMap(PhiKind::sin_quarter_pi); }
PhiMap PhiMap::sqrt_half() { return PhiMap(PhiKind::sqrt_half); }

PhiMap PhiMap::table(std::span<const double> t, std::span<const double> phi) {
  if (t.size() != phi.size()) throw ConfigError("phi table: column lengths differ");
  if (t.size() < 4) throw ConfigError("phi table: at least 4 samples required");
  if (t.front() != 0.0 || t.back() != 1.0)
    throw ConfigError("phi table: abscissae must start at 0 and end at 1");
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!std::isfinite(t[i]) || !std::isfinite(phi[i])) throw ConfigError("phi table: non-finite sample");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw ConfigError("phi table: abscissae not strictly increasing");
    if (!(phi[i] > phi[i - 1])) throw ConfigError("phi table: values not strictly increasing");
  }

  auto tab = std::make_shared<Table>();
  tab->t.assign(t.begin(), t.end());
  tab->y.assign(phi.begin(), phi.end());
  const std::size_t n = t.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = t[k + 1] - t[k];
    delta[k] = (phi[k + 1] - phi[k]) / h[k];
  }
  tab->d.resize(n);
  // Fritsch-Butland weighted harmonic mean; all secants are positive here.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double w1 = 2 * h[k] + h[k - 1];
    const double w2 = h[k] + 2 * h[k - 1];
    tab->d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    // keep the end slope strictly positive so phi' never vanishes
    if (s <= 0.0) s = 0.5 * d0;
    if (s > 3 * d0) s = 3 * d0;
    return s;
  };
  tab->d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  tab->d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return PhiMap(PhiKind::table, std::move(tab));
}

double PhiMap::eval(double t) const {
  switch (kind_) {
    case PhiKind::identity: return t;
    case PhiKind::sin_quarter_pi: return std::sin(0.25 * std::numbers::pi * t);
    case PhiKind::sqrt_half: return 0.5 * std::sqrt(1.0 + t);
    case PhiKind::table: return table_->eval(t);
  }
  return t;
}

double PhiMap::deriv(double t) const {
  switch (kind_) {
    case PhiKind::identity: return 1.0;
    case PhiKind::sin_quarter_pi:
      return 0.25 * std::numbers::pi * std::cos(0.25 * std::numbers::pi * t);
    case PhiKind::sqrt_half: return 0.25 / std::sqrt(1.0 + t);
    case PhiKind::table: return table_->deriv(t);
  }
  return 1.0;
}

double PhiMap::inverse(double y) const {
  y = std::clamp(y, phi0_, phi1_);
  switch (kind_) {
    case PhiKind::identity: return y;
    case PhiKind::sqrt_half: return std::clamp(4.0 * y * y - 1.0, 0.0, 1.0);
    case PhiKind::sin_quarter_pi:
    case PhiKind::table: return newton_inverse(y);
  }
  return y;
}

double PhiMap::newton_inverse(double y) const {
  if (y <= phi0_) return 0.0;
  if (y >= phi1_) return 1.0;
  double lo = 0.0, hi = 1.0;
  double x = (y - phi0_) / (phi1_ - phi0_);
  for (int iter = 0; iter < 200; ++iter) {
    const double r = eval(x) - y;
    if (r == 0.0) return x;
    if (r > 0.0) hi = x; else lo = x;
    double next = x - r / deriv(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 || hi - lo <= 1e-15) return next;
    x = next;
  }
  return x;
}

PhiMap phi_catalog(PhiKind kind, std::span<const double> table_t, std::span<const double> table_phi) {
  switch (kind) {
    case PhiKind::identity: return PhiMap::identity();
    case PhiKind::sin_quarter_pi: return PhiMap::sin_quarter_pi();
    case PhiKind::sqrt_half: return PhiMap::sqrt_half();
    case PhiKind::table: return PhiMap::table(table_t, table_phi);
  }
  throw ConfigError("unknown phi kind");
}

}  // namespace fracbvp
