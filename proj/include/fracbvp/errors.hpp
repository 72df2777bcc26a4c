#pragma once

#include <stdexcept>
#include <string>

namespace fracbvp {

/// Argument outside the mathematical domain of an operation (t outside [0,1], x <= 0 for gamma, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Problem data that cannot be used at all, e.g. mu == 0 or an invalid table.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced NaN or infinity.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two grid functions living on different quadrature grids were combined.
class GridMismatch : public std::invalid_argument {
public:
  GridMismatch() : std::invalid_argument("grid functions live on different grids") {}
};

}  // namespace fracbvp
