#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fekete/error.hpp"
#include "fekete/poly.hpp"

namespace fekete {

/// Weight w(z) = 1/|z - b| on the unit circle, b real with |b| != 1.
struct CircleWeight {
  double b = 0.0;

  explicit CircleWeight(double b_in) : b(b_in) {
    if (!std::isfinite(b_in) || std::abs(std::abs(b_in) - 1.0) == 0.0)
      throw InvalidInput("circle weight requires b != +-1");
  }

  /// log w(e^{it}) = -log|e^{it} - b|
  [[nodiscard]] double log_weight(double t) const { return -0.5 * std::log(1.0 - 2.0 * b * std::cos(t) + b * b); }
};

/// Reduces an angle to [0, 2 pi).
[[nodiscard]] inline double wrap_angle(double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(t, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

/// phi(w) = (b w - 1) / (w - b); an involution mapping the unit circle onto itself.
[[nodiscard]] inline complex mobius(double b, complex w) {
  if (std::abs(std::abs(b) - 1.0) == 0.0) throw InvalidInput("mobius: b must differ from +-1");
  const complex den = w - b;
  if (den == complex{0.0}) throw DegenerateInput("mobius: pole at w = b");
  return (b * w - 1.0) / den;
}

struct CircleSolution {
  double alpha;
  std::vector<complex> points;  // ordered by angle
  std::vector<double> angles;   // arguments of points in [0, 2 pi), ascending
};

/// phi(e^{i(alpha + 2 pi k/n)}), k = 0..n-1.
[[nodiscard]] inline CircleSolution circle_points(double b, int n, double alpha) {
  const CircleWeight weight(b);
  if (n < 2) throw InvalidInput("circle_points: n must be >= 2");
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const complex w = std::polar(1.0, alpha + 2.0 * std::numbers::pi * k / n);
    angles[static_cast<std::size_t>(k)] = wrap_angle(std::arg(mobius(weight.b, w)));
  }
  std::sort(angles.begin(), angles.end());
  std::vector<complex> pts(angles.size());
  std::transform(angles.begin(), angles.end(), pts.begin(), [](double t) { return std::polar(1.0, t); });
  return {alpha, std::move(pts), std::move(angles)};
}

/// n^{1/(n-1)} / |1 - b^2|
[[nodiscard]] inline double circle_diameter(double b, int n) {
  const CircleWeight weight(b);
  if (n < 2) throw InvalidInput("circle_diameter: n must be >= 2");
  return std::exp(std::log(static_cast<double>(n)) / (n - 1)) / std::abs(1.0 - weight.b * weight.b);
}

/// Arguments in [0, 2 pi) of phi(e^{i t_k}), ascending; the preimages of a configuration.
[[nodiscard]] inline std::vector<double> preimage_angles(double b, const std::vector<double>& angles) {
  std::vector<double> out(angles.size());
  std::transform(angles.begin(), angles.end(), out.begin(),
                 [b](double t) { return wrap_angle(std::arg(mobius(b, std::polar(1.0, t)))); });
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest deviation of consecutive (cyclic) gaps from 2 pi/n.
[[nodiscard]] inline double equispacing_error(const std::vector<double>& sorted_angles) {
  const std::size_t n = sorted_angles.size();
  const double gap = 2.0 * std::numbers::pi / static_cast<double>(n);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double d = (k + 1 < n) ? sorted_angles[k + 1] - sorted_angles[k]
                           : sorted_angles[0] + 2.0 * std::numbers::pi - sorted_angles[k];
    worst = std::max(worst, std::abs(d - gap));
  }
  return worst;
}

}  // namespace fekete
