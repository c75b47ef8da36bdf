#pragma once

#include <stdexcept>
#include <string>

namespace fresnel {

// Thrown when a Mobius map hits its pole (|denominator| below tolerance).
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter outside the operation's domain (A <= 0, f = 0, Im q <= 0, ...).
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical degradation: determinant drift, non-unimodular pair,
// undersampled chirp, exponential overflow.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed system-description or dump file.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fresnel
