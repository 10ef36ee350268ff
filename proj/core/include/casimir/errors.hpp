#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Malformed or physically inadmissible configuration input.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or Matsubara sum failed to reach the requested tolerance.
/// Carries the achieved estimate so callers can still report it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved_value,
                     double achieved_error, int matsubara_n = -1)
        : std::runtime_error(what),
          achieved_value(achieved_value),
          achieved_error(achieved_error),
          matsubara_n(matsubara_n) {}

    double achieved_value;
    double achieved_error;
    int matsubara_n;  // -1 when not tied to a Matsubara order
};

/// An internal numeric invariant was violated (should not happen for passive media).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace casimir
