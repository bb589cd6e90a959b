#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fekete/circle.hpp"
#include "fekete/error.hpp"

namespace fekete {

enum class MeasureFamily {
  RealSGt1,       // equilibrium measure for |x - i|^{-s}, s > 1
  Arctan,         // equilibrium measure for 1/|x - i|
  CirclePoisson,  // equilibrium measure for 1/|z - b| on the unit circle (angle variable)
  HarmonicInf,    // harmonic measure of C \ [-r, r] at infinity
  HarmonicI,      // harmonic measure of C \ [-r, r] at i
};

struct Interval {
  double lo;
  double hi;
  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};

/// A named unit measure. `param` is s, b or r depending on the family.
struct MeasureSpec {
  MeasureFamily family;
  double param = 0.0;

  [[nodiscard]] static MeasureSpec real_s(double s) {
    if (!(s > 1.0)) throw InvalidInput("RealSGt1 measure requires s > 1");
    return {MeasureFamily::RealSGt1, s};
  }
  [[nodiscard]] static MeasureSpec arctan() { return {MeasureFamily::Arctan, 1.0}; }
  [[nodiscard]] static MeasureSpec circle_poisson(double b) {
    (void)CircleWeight(b);
    return {MeasureFamily::CirclePoisson, b};
  }
  [[nodiscard]] static MeasureSpec harmonic_inf(double r) {
    if (!(r > 0.0)) throw InvalidInput("harmonic measure requires r > 0");
    return {MeasureFamily::HarmonicInf, r};
  }
  [[nodiscard]] static MeasureSpec harmonic_i(double r) {
    if (!(r > 0.0)) throw InvalidInput("harmonic measure requires r > 0");
    return {MeasureFamily::HarmonicI, r};
  }

  [[nodiscard]] bool on_circle() const { return family == MeasureFamily::CirclePoisson; }

  /// Radius R of the interval support [-R, R]; infinite for Arctan, unused for the circle.
  [[nodiscard]] double radius() const {
    switch (family) {
      case MeasureFamily::RealSGt1: return std::sqrt(2.0 * param - 1.0) / (param - 1.0);
      case MeasureFamily::HarmonicInf:
      case MeasureFamily::HarmonicI: return param;
      case MeasureFamily::Arctan: return std::numeric_limits<double>::infinity();
      case MeasureFamily::CirclePoisson: return std::numbers::pi;
    }
    return 0.0;
  }

  [[nodiscard]] Interval support() const {
    if (family == MeasureFamily::CirclePoisson) return {0.0, 2.0 * std::numbers::pi};
    const double r = radius();
    return {-r, r};
  }
};

/// Support [-sqrt(2s-1)/(s-1), sqrt(2s-1)/(s-1)] of the s > 1 equilibrium measure (a = 1).
[[nodiscard]] inline double support_radius(double s) { return MeasureSpec::real_s(s).radius(); }

/// Pointwise density; 0 outside the support, +inf at the endpoints of the
/// harmonic families. Circle families take an angle.
[[nodiscard]] inline double density(const MeasureSpec& m, double x) {
  constexpr double pi = std::numbers::pi;
  switch (m.family) {
    case MeasureFamily::RealSGt1: {
      const double s = m.param;
      const double R = m.radius(), ax = std::abs(x);
      const double q = (s - 1.0) * (s - 1.0) * (R - ax) * (R + ax);
      return q <= 0.0 ? 0.0 : std::sqrt(q) / (pi * (1.0 + x * x));
    }
    case MeasureFamily::Arctan: return 1.0 / (pi * (1.0 + x * x));
    case MeasureFamily::CirclePoisson: {
      const double b = m.param;
      return std::abs(1.0 - b * b) / (2.0 * pi * (1.0 - 2.0 * b * std::cos(x) + b * b));
    }
    case MeasureFamily::HarmonicInf: {
      const double r = m.param;
      if (std::abs(x) == r) return std::numeric_limits<double>::infinity();
      if (!(std::abs(x) < r)) return 0.0;
      return 1.0 / (pi * std::sqrt(r * r - x * x));
    }
    case MeasureFamily::HarmonicI: {
      const double r = m.param;
      if (std::abs(x) == r) return std::numeric_limits<double>::infinity();
      if (!(std::abs(x) < r)) return 0.0;
      return std::sqrt(r * r + 1.0) / (pi * (1.0 + x * x) * std::sqrt(r * r - x * x));
    }
  }
  return 0.0;
}

namespace detail {

inline constexpr double kQuadTol = 1e-9;

/// Adaptive Gauss-Kronrod integral; throws when the error estimate exceeds abs_tol.
template <class F>
double integrate(F&& f, double lo, double hi, double abs_tol = kQuadTol) {
  if (lo == hi) return 0.0;
  // Midpoint rule below rounding width.
  if (std::abs(hi - lo) <= 1e-12 * std::max(1.0, std::abs(lo))) return f(0.5 * (lo + hi)) * (hi - lo);
  double err = 0.0;
  const double val =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-13, &err);
  if (!(err <= abs_tol) || !std::isfinite(val)) throw QuadratureError("adaptive quadrature did not converge", err);
  return val;
}

/// Double-exponential rule for integrands with endpoint singularities.
/// f(x, xc) also receives xc, the distance from x to the nearer endpoint.
template <class F>
double integrate_singular(F&& f, double lo, double hi, double abs_tol = kQuadTol) {
  if (std::abs(hi - lo) <= 1e-12 * std::max(1.0, std::abs(lo))) return 0.0;
  double err = 0.0;
  boost::math::quadrature::tanh_sinh<double> rule;
  const double val = rule.integrate(f, lo, hi, 1e-13, &err);
  if (!(err <= abs_tol) || !std::isfinite(val)) throw QuadratureError("tanh-sinh quadrature did not converge", err);
  return val;
}

/// Density of an interval-supported family under x = R sin(theta), times dx/dtheta.
/// Smooth up to the endpoints for the square-root families.
inline double density_theta(const MeasureSpec& m, double theta) {
  constexpr double pi = std::numbers::pi;
  const double R = m.radius();
  const double c = std::cos(theta);
  const double x = R * std::sin(theta);
  switch (m.family) {
    case MeasureFamily::RealSGt1: {
      const double s = m.param;
      return std::sqrt(2.0 * s - 1.0) * R * c * c / (pi * (1.0 + x * x));
    }
    case MeasureFamily::HarmonicInf: return 1.0 / pi;
    case MeasureFamily::HarmonicI: return std::sqrt(R * R + 1.0) / (pi * (1.0 + x * x));
    default: return density(m, x) * R * c;
  }
}

}  // namespace detail

/// Distribution function. Circle families integrate from angle 0.
[[nodiscard]] inline double cdf(const MeasureSpec& m, double x) {
  constexpr double pi = std::numbers::pi;
  switch (m.family) {
    case MeasureFamily::Arctan: return 0.5 + std::atan(x) / pi;
    case MeasureFamily::CirclePoisson: {
      if (x <= 0.0) return 0.0;
      if (x >= 2.0 * pi) return 1.0;
      return std::clamp(detail::integrate([&](double t) { return density(m, t); }, 0.0, x), 0.0, 1.0);
    }
    default: {
      const double R = m.radius();
      if (x <= -R) return 0.0;
      if (x >= R) return 1.0;
      const double theta = std::asin(x / R);
      return std::clamp(detail::integrate([&](double th) { return detail::density_theta(m, th); }, -pi / 2, theta),
                        0.0, 1.0);
    }
  }
}

/// Total mass by quadrature over the whole support (Arctan through x = tan(theta)).
[[nodiscard]] inline double total_mass(const MeasureSpec& m) {
  constexpr double pi = std::numbers::pi;
  switch (m.family) {
    case MeasureFamily::Arctan:
      return detail::integrate(
          [&](double th) {
            const double c = std::cos(th);
            return density(m, std::tan(th)) / (c * c);
          },
          -pi / 2, pi / 2);
    case MeasureFamily::CirclePoisson:
      return detail::integrate([&](double t) { return density(m, t); }, 0.0, 2.0 * pi);
    default:
      return detail::integrate([&](double th) { return detail::density_theta(m, th); }, -pi / 2, pi / 2);
  }
}

// ---------------------------------------------------------------------------
// Capacities and Robin constants
// ---------------------------------------------------------------------------

/// log cap(R, w) for w(x) = |x - i|^{-s}:
/// (2s - 2s^2 - 1) log 2 - s^2 log s - (s-1)^2 log(s-1) + ((2s-1)^2/2) log(2s-1).
[[nodiscard]] inline double log_capacity_real(double s) {
  if (!(s >= 1.0)) throw InvalidInput("capacity_real: s must be >= 1");
  const double t = s - 1.0;
  const double t_log_t = (t == 0.0) ? 0.0 : t * t * std::log(t);
  return (2.0 * s - 2.0 * s * s - 1.0) * std::numbers::ln2 - s * s * std::log(s) - t_log_t +
         0.5 * (2.0 * s - 1.0) * (2.0 * s - 1.0) * std::log(2.0 * s - 1.0);
}

[[nodiscard]] inline double capacity_real(double s) { return std::exp(log_capacity_real(s)); }

/// cap(T, w) = 1/|1 - b^2| for w(z) = 1/|z - b|.
[[nodiscard]] inline double capacity_circle(double b) {
  const CircleWeight w(b);
  return 1.0 / std::abs(1.0 - w.b * w.b);
}

/// Green function of C \ [-r, r] with pole at infinity, evaluated at i.
[[nodiscard]] inline double green_i_inf(double r) { return std::log((std::sqrt(r * r + 1.0) + 1.0) / r); }

/// F_w = s g(i, inf) + (s-1) log(r/2), r = sqrt(2s-1)/(s-1).
[[nodiscard]] inline double modified_robin_constant(double s) {
  if (!(s > 1.0)) throw InvalidInput("modified_robin_constant: s must be > 1");
  const double r = support_radius(s);
  return s * green_i_inf(r) + (s - 1.0) * std::log(r / 2.0);
}

/// U^{mu_w}(x) = -int log|x - t| d mu_w(t) for the s > 1 equilibrium measure,
/// split at the logarithmic singularity when x lies in the support.
[[nodiscard]] inline double log_potential(double s, double x) {
  constexpr double pi = std::numbers::pi;
  const MeasureSpec m = MeasureSpec::real_s(s);
  const double R = m.radius();
  double val = 0.0;
  if (std::abs(x) < R) {
    const double phi = std::asin(x / R);
    // |x - R sin th| = 2R |cos((th + phi)/2) sin((th - phi)/2)|
    auto integrand = [&](double th, double delta) {
      const double d = 2.0 * R * std::abs(std::cos(0.5 * (th + phi)) * std::sin(0.5 * delta));
      return d == 0.0 ? 0.0 : std::log(d) * detail::density_theta(m, th);
    };
    const double mid_left = 0.5 * (phi - pi / 2);
    const double mid_right = 0.5 * (phi + pi / 2);
    val = detail::integrate_singular(
              [&](double th, double thc) { return integrand(th, th >= mid_left ? -thc : th - phi); }, -pi / 2, phi) +
          detail::integrate_singular(
              [&](double th, double thc) { return integrand(th, th < mid_right ? thc : th - phi); }, phi, pi / 2);
  } else {
    auto integrand = [&](double th) { return std::log(std::abs(x - R * std::sin(th))) * detail::density_theta(m, th); };
    val = detail::integrate(integrand, -pi / 2, pi / 2);
  }
  return -val;
}

/// int log w d mu_w = -(s/2) int log(1 + x^2) d mu_w for the s > 1 equilibrium measure.
[[nodiscard]] inline double mean_log_weight(double s) {
  constexpr double pi = std::numbers::pi;
  const MeasureSpec m = MeasureSpec::real_s(s);
  const double R = m.radius();
  return -0.5 * s * detail::integrate([&](double th) {
    const double x = R * std::sin(th);
    return std::log1p(x * x) * detail::density_theta(m, th);
  }, -pi / 2, pi / 2);
}

struct FrostmanSample {
  double x;
  double residual;  // U + Q - F_w; NaN when quadrature failed
  bool ok;
  std::string error;
};

struct EquilibriumReport {
  double capacity;
  double robin_constant;   // V_w = -log capacity
  double modified_robin;   // F_w
  double frostman_max_violation;            // max over grid of F_w - (U + Q)
  double frostman_max_onsupport_deviation;  // max over grid points in the support of |U + Q - F_w|
  std::vector<FrostmanSample> samples;
  [[nodiscard]] bool all_ok() const {
    return std::all_of(samples.begin(), samples.end(), [](const FrostmanSample& p) { return p.ok; });
  }
};

/// Checks U^{mu_w} + Q >= F_w on the grid, with equality on the support (a = 1).
[[nodiscard]] inline EquilibriumReport frostman_check(double s, std::span<const double> grid) {
  const double F = modified_robin_constant(s);
  const double R = support_radius(s);
  EquilibriumReport rep{capacity_real(s), -log_capacity_real(s), F, -std::numeric_limits<double>::infinity(), 0.0, {}};
  rep.samples.reserve(grid.size());
  for (double x : grid) {
    if (!std::isfinite(x)) throw InvalidInput("frostman_check: grid points must be finite");
    FrostmanSample p{x, std::numeric_limits<double>::quiet_NaN(), true, {}};
    try {
      const double q = 0.5 * s * std::log1p(x * x);
      p.residual = log_potential(s, x) + q - F;
    } catch (const QuadratureError& e) {
      p.ok = false;
      p.error = e.what();
    }
    if (p.ok) {
      rep.frostman_max_violation = std::max(rep.frostman_max_violation, -p.residual);
      if (std::abs(x) < R) rep.frostman_max_onsupport_deviation = std::max(rep.frostman_max_onsupport_deviation, std::abs(p.residual));
    }
    rep.samples.push_back(std::move(p));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weak* convergence diagnostic
// ---------------------------------------------------------------------------

/// Kolmogorov-Smirnov distance between the counting measure of sorted points
/// (angles in [0, 2 pi) for circle families) and the measure m.
[[nodiscard]] inline double ks_distance(std::span<const double> sorted_points, const MeasureSpec& m) {
  const double n = static_cast<double>(sorted_points.size());
  if (sorted_points.empty()) throw InvalidInput("ks_distance: empty sample");
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_points.size(); ++i) {
    const double F = cdf(m, sorted_points[i]);
    const double k = static_cast<double>(i);
    d = std::max({d, (k + 1.0) / n - F, F - k / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace fekete
