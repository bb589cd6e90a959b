#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fekete/error.hpp"

namespace fekete {

using complex = std::complex<double>;

/// Dense univariate polynomial with complex coefficients, ascending degree order.
///
/// Coefficients are normalized on construction: trailing zeros are trimmed so
/// that coeffs()[degree()] is nonzero, except for the zero polynomial which is
/// stored as the single coefficient 0 with degree 0.
class Poly {
 public:
  Poly() : coeffs_{complex{0.0}} {}
  Poly(std::initializer_list<complex> cs) : coeffs_(cs) { normalize(); }
  explicit Poly(std::vector<complex> cs) : coeffs_(std::move(cs)) { normalize(); }

  [[nodiscard]] static Poly from_real(std::span<const double> cs) {
    return Poly(std::vector<complex>(cs.begin(), cs.end()));
  }
  [[nodiscard]] static Poly from_real(std::initializer_list<double> cs) {
    return Poly(std::vector<complex>(cs.begin(), cs.end()));
  }
  [[nodiscard]] static Poly constant(complex c) { return Poly({c}); }
  /// c * x^k
  [[nodiscard]] static Poly monomial(std::size_t k, complex c = 1.0) {
    std::vector<complex> cs(k + 1, complex{0.0});
    cs[k] = c;
    return Poly(std::move(cs));
  }
  /// Monic polynomial with the given roots.
  [[nodiscard]] static Poly from_roots(std::span<const complex> roots) {
    Poly p = constant(1.0);
    for (const auto& r : roots) p = p * Poly({-r, 1.0});
    return p;
  }

  [[nodiscard]] std::size_t degree() const { return coeffs_.size() - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == complex{0.0}; }
  [[nodiscard]] const std::vector<complex>& coeffs() const { return coeffs_; }
  [[nodiscard]] complex leading() const { return coeffs_.back(); }
  [[nodiscard]] complex operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : complex{0.0};
  }

  /// Horner evaluation.
  [[nodiscard]] complex operator()(complex z) const {
    complex acc{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Sum of |c_k| |z|^k; the rounding-error scale of Horner evaluation at z.
  [[nodiscard]] double magnitude_at(complex z) const {
    const double r = std::abs(z);
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
  }

  [[nodiscard]] Poly derivative() const {
    if (coeffs_.size() == 1) return Poly{};
    std::vector<complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Poly(std::move(d));
  }

  /// p(c x)
  [[nodiscard]] Poly compose_scale(complex c) const {
    std::vector<complex> out(coeffs_);
    complex pw{1.0};
    for (auto& v : out) {
      v *= pw;
      pw *= c;
    }
    return Poly(std::move(out));
  }

  [[nodiscard]] double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }
  [[nodiscard]] double max_abs_imag() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c.imag()));
    return m;
  }
  /// Drops imaginary parts; for polynomials known to have real coefficients.
  [[nodiscard]] Poly real_part() const {
    std::vector<complex> out(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), out.begin(),
                   [](complex c) { return complex{c.real(), 0.0}; });
    return Poly(std::move(out));
  }

  friend Poly operator+(const Poly& p, const Poly& q) {
    std::vector<complex> out(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p[k] + q[k];
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& p) {
    std::vector<complex> out(p.coeffs_);
    for (auto& v : out) v = -v;
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }
  friend Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly{};
    std::vector<complex> out(p.coeffs_.size() + q.coeffs_.size() - 1, complex{0.0});
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Poly(std::move(out));
  }
  friend Poly operator*(complex c, const Poly& p) {
    std::vector<complex> out(p.coeffs_);
    for (auto& v : out) v *= c;
    return Poly(std::move(out));
  }
  friend Poly operator*(const Poly& p, complex c) { return c * p; }

 private:
  void normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == complex{0.0}) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(complex{0.0});
  }

  std::vector<complex> coeffs_;
};

[[nodiscard]] inline complex eval(const Poly& p, complex z) { return p(z); }

/// Largest |p_k - q_k| over all coefficient positions.
[[nodiscard]] inline double max_coeff_diff(const Poly& p, const Poly& q) {
  const std::size_t n = std::max(p.coeffs().size(), q.coeffs().size());
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(p[k] - q[k]));
  return m;
}

/// Largest per-coefficient relative difference, |p_k - q_k| / max(|p_k|, |q_k|),
/// positions where both are exactly zero are skipped.
[[nodiscard]] inline double max_coeff_rel_diff(const Poly& p, const Poly& q) {
  const std::size_t n = std::max(p.coeffs().size(), q.coeffs().size());
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = std::max(std::abs(p[k]), std::abs(q[k]));
    if (scale == 0.0) continue;
    m = std::max(m, std::abs(p[k] - q[k]) / scale);
  }
  return m;
}

/// Deviation of q from the reference p: relative where p_k != 0, and
/// |q_k| / max_j |p_j| where p_k == 0.
[[nodiscard]] inline double max_coeff_dev_from(const Poly& ref, const Poly& q) {
  const std::size_t n = std::max(ref.coeffs().size(), q.coeffs().size());
  const double top = ref.max_abs_coeff();
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = std::abs(ref[k]);
    m = std::max(m, std::abs(ref[k] - q[k]) / (r == 0.0 ? top : r));
  }
  return m;
}

struct RootOptions {
  int max_iters = 500;
};

/// All roots of p with multiplicity, via Aberth-Ehrlich simultaneous iteration.
/// Sorted by real part, then imaginary part.
[[nodiscard]] inline std::vector<complex> roots(const Poly& p, RootOptions opt = {}) {
  if (p.is_zero() || p.degree() == 0) throw InvalidInput("roots: polynomial must have degree >= 1");
  const std::size_t n = p.degree();
  const Poly monic = (1.0 / p.leading()) * p;
  const auto& c = monic.coeffs();

  if (n == 1) return {-c[0]};

  // Fujiwara bound on root moduli.
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double term = std::pow(std::abs(c[k]) / (k == 0 ? 2.0 : 1.0), 1.0 / static_cast<double>(n - k));
    radius = std::max(radius, term);
  }
  radius = std::max(2.0 * radius, 1e-300);

  const complex centre = -c[n - 1] / static_cast<double>(n);
  std::vector<complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = centre + 0.5 * radius * std::polar(1.0, theta);
  }

  auto eval_both = [&](complex x, complex& v, complex& dv) {
    v = complex{0.0};
    dv = complex{0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      dv = dv * x + v;
      v = v * x + *it;
    }
  };

  std::vector<bool> done(n, false);
  for (int iter = 0; iter < opt.max_iters; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      complex v, dv;
      eval_both(z[k], v, dv);
      // Residual at rounding level: no further progress is possible.
      if (std::abs(v) <= 4.0 * std::numeric_limits<double>::epsilon() * monic.magnitude_at(z[k])) {
        done[k] = true;
        continue;
      }
      const complex ratio = v / dv;
      complex repulsion{0.0};
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z[k]))) done[k] = true;
      else all_done = false;
    }
    if (all_done) break;
  }

  std::sort(z.begin(), z.end(), [](complex a, complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

/// Discriminant computed from the Sylvester resultant of p and p'.
///
/// disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lc(p). For monic p this is the
/// squared Vandermonde of the roots. Meant as an oracle for small degree.
[[nodiscard]] inline complex discriminant_resultant(const Poly& p) {
  if (p.is_zero() || p.degree() < 2)
    throw InvalidInput("discriminant_resultant: degree must be >= 2 with nonzero leading coefficient");
  const std::size_t n = p.degree();
  const Poly dp = p.derivative();
  const std::size_t m = n - 1;
  const std::size_t size = n + m;

  Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  // m shifted copies of p, then n shifted copies of p'; coefficients in descending order.
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t k = 0; k <= n; ++k)
      syl(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(row + k)) = p[n - k];
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t k = 0; k <= m; ++k)
      syl(static_cast<Eigen::Index>(m + row), static_cast<Eigen::Index>(row + k)) = dp[m - k];

  const complex res = syl.partialPivLu().determinant();
  const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * res / p.leading();
}

/// Rising factorial (t)_n = t (t+1) ... (t+n-1); (t)_0 = 1.
[[nodiscard]] inline double pochhammer(double t, unsigned n) {
  double acc = 1.0;
  for (unsigned k = 0; k < n; ++k) acc *= t + static_cast<double>(k);
  return acc;
}

/// A real number stored as sign * exp(log_abs); sign is 0 for an exact zero.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  [[nodiscard]] double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  friend SignedLog operator*(SignedLog x, SignedLog y) { return {x.log_abs + y.log_abs, x.sign * y.sign}; }
  friend SignedLog operator/(SignedLog x, SignedLog y) {
    if (y.sign == 0) throw SingularParameter("SignedLog: division by zero");
    return {x.log_abs - y.log_abs, x.sign * y.sign};
  }
};

[[nodiscard]] inline SignedLog signed_log(double x) {
  if (x == 0.0) return {-INFINITY, 0};
  return {std::log(std::abs(x)), x < 0.0 ? -1 : 1};
}

/// x^k in log form, k any integer.
[[nodiscard]] inline SignedLog signed_log_pow(double x, long k) {
  if (k == 0) return {0.0, 1};
  SignedLog b = signed_log(x);
  if (b.sign == 0) {
    if (k < 0) throw SingularParameter("signed_log_pow: zero to a negative power");
    return b;
  }
  return {static_cast<double>(k) * b.log_abs, (k % 2 == 0) ? 1 : b.sign};
}

/// (t)_n in log form; stays finite where the plain product overflows.
[[nodiscard]] inline SignedLog log_pochhammer(double t, unsigned n) {
  SignedLog acc{0.0, 1};
  for (unsigned k = 0; k < n; ++k) acc = acc * signed_log(t + static_cast<double>(k));
  return acc;
}

[[nodiscard]] inline double log_factorial(unsigned n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace fekete
