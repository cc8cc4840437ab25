#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qwalk {

/// Incompatible or out-of-range solver / system configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A dense build or statevector exceeds the desk-scale caps.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Weighted system rejected because rho(B) >= 1.
struct SpectralRadiusError : ConfigError {
  explicit SpectralRadiusError(double r)
      : ConfigError("spectral radius of B is " + std::to_string(r) + ", must be < 1"), radius(r) {}
  double radius;
};

/// Malformed input file; `line` is 1-based (0 when not attributable to a line).
struct ParseError : std::runtime_error {
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error(line_no ? "line " + std::to_string(line_no) + ": " + what : what), line(line_no) {}
  std::size_t line;
};

}  // namespace qwalk
