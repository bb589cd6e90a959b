#pragma once

#include <stdexcept>
#include <string>

namespace fekete {

/// Raised when an argument violates a documented domain (a <= 0, s < 1, |b| == 1, n < 2, ...).
struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A parameter lands on a pole of a closed-form expression (vanishing denominator).
struct SingularParameter : std::domain_error {
  explicit SingularParameter(const std::string& what) : std::domain_error(what) {}
};

/// Point configuration with coincident points where a derivative is requested.
struct DegenerateInput : std::domain_error {
  explicit DegenerateInput(const std::string& what) : std::domain_error(what) {}
};

/// Adaptive quadrature did not reach the requested tolerance.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
        achieved_error(achieved) {}
  double achieved_error;
};

}  // namespace fekete
