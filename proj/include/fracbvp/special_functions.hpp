#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracbvp {

/// Gamma function for x > 0. Lanczos approximation (g = 7, 9 terms) with
/// upward recurrence below 0.5. Relative error is below 1e-14 on [0.5, 10].
/// Throws DomainError for x <= 0 or non-finite x.
double gamma(double x);

enum class PhiKind { identity, sin_quarter_pi, sqrt_half, table };

std::string_view to_string(PhiKind kind);
PhiKind phi_kind_from_string(std::string_view name);

/// Strictly increasing coordinate map phi: [0,1] -> R together with its
/// derivative and inverse. Immutable; copies share the tabulated data.
class PhiMap {
public:
  PhiKind kind() const noexcept { return kind_; }

  double eval(double t) const;
  double deriv(double t) const;
  /// Inverse on [eval(0), eval(1)]; arguments are clamped to that range.
  double inverse(double y) const;

  double at_zero() const noexcept { return phi0_; }
  double at_one() const noexcept { return phi1_; }
  /// Shifted coordinate Phi(t) = phi(t) - phi(0).
  double shifted(double t) const { return eval(t) - phi0_; }

  /// True when both describe the same map (same catalog entry or same table data).
  bool same_map(const PhiMap& other) const noexcept {
    return kind_ == other.kind_ && table_ == other.table_;
  }

  static PhiMap identity();
  static PhiMap sin_quarter_pi();
  static PhiMap sqrt_half();
  /// Monotone (Fritsch-Carlson) piecewise-cubic interpolant of the samples.
  /// Sample abscissae must run from 0 to 1; both columns strictly increasing;
  /// at least four points. Throws ConfigError otherwise.
  static PhiMap table(std::span<const double> t, std::span<const double> phi);

private:
  struct Table;

  explicit PhiMap(PhiKind kind, std::shared_ptr<const Table> table = nullptr);

  double newton_inverse(double y) const;

  PhiKind kind_;
  std::shared_ptr<const Table> table_;
  double phi0_ = 0.0;
  double phi1_ = 1.0;
};

/// Catalog lookup. `table` requires the sample columns; the other kinds ignore them.
PhiMap phi_catalog(PhiKind kind, std::span<const double> table_t = {},
                   std::span<const double> table_phi = {});

}  // namespace fracbvp
