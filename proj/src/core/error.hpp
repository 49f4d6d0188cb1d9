#pragma once

#include <stdexcept>
#include <string>

namespace mel {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: JSON, rational strings, out-of-schema keys.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Argument outside the mathematical domain of an operation (h outside (0,1),
// epsilon beyond the perturbative regime, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Closed-under-construction ring violated: product of two scalars that both
// carry transcendental parts, mixing polynomial variables, inexact division.
struct RingError : Error {
  explicit RingError(const std::string& msg) : Error(msg) {}
};

// Numerical machinery failed to meet its contract: quadrature did not
// converge, integrator escaped or stalled, scan grid too coarse.
struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace mel
