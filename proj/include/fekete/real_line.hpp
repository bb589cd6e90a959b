#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Eigenvalues>

#include "fekete/error.hpp"
#include "fekete/poly.hpp"

namespace fekete {

/// Weight w(x) = |x - a i|^{-s} on the real line.
///
/// a = 0 is rejected and a negative a is replaced by |a|, since the weight only
/// depends on |a|. s < 1 is rejected: the weighted Vandermonde is then unbounded.
struct RealWeight {
  double a = 1.0;
  double s = 1.0;

  RealWeight(double a_in, double s_in) : a(std::abs(a_in)), s(s_in) {
    if (!(a_in != 0.0) || !std::isfinite(a_in)) throw InvalidInput("weight offset a must be nonzero and finite");
    if (!(s_in >= 1.0) || !std::isfinite(s_in))
      throw InvalidInput("weight exponent s must satisfy s >= 1 (for s < 1 the problem is unbounded)");
  }

  /// log w(x)
  [[nodiscard]] double log_weight(double x) const { return -0.5 * s * std::log(x * x + a * a); }
  /// External field Q(x) = -log w(x) = s log|x - a i|.
  [[nodiscard]] double field(double x) const { return -log_weight(x); }
};

namespace detail {

inline void require_n(int n, int min_n, const char* who) {
  if (n < min_n) throw InvalidInput(std::string(who) + ": n must be >= " + std::to_string(min_n));
}

inline void require_positive_a(double a, const char* who) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidInput(std::string(who) + ": a must be positive");
}

inline void require_s_gt1(double s, const char* who) {
  if (!(s > 1.0) || !std::isfinite(s)) throw InvalidInput(std::string(who) + ": s must be > 1");
}

inline double binomial(int n, int k) {
  return std::exp(log_factorial(static_cast<unsigned>(n)) - log_factorial(static_cast<unsigned>(k)) -
                  log_factorial(static_cast<unsigned>(n - k)));
}

/// Generalized binomial t(t-1)...(t-k+1)/k!.
inline double gen_binomial(double t, int k) {
  double acc = 1.0;
  for (int j = 0; j < k; ++j) acc *= (t - j) / static_cast<double>(j + 1);
  return acc;
}

/// (x + c)^n expanded in ascending powers.
inline Poly binomial_power(complex c, int n) {
  std::vector<complex> cs(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) cs[static_cast<std::size_t>(k)] = binomial(n, k) * std::pow(c, n - k);
  return Poly(std::move(cs));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// s = 1: w(x) = 1/|x - a i|
// ---------------------------------------------------------------------------

/// Phase giving the symmetric solution with B = 0.
[[nodiscard]] inline double canonical_gamma(int n) {
  return -std::numbers::pi / 2 + std::numbers::pi / (2.0 * n);
}

/// a tan(gamma + k pi/n), k = 0..n-1, ascending. gamma must lie in (-pi/2, -pi/2 + pi/n).
[[nodiscard]] inline std::vector<double> s1_points(double a, int n, double gamma) {
  detail::require_positive_a(a, "s1_points");
  detail::require_n(n, 2, "s1_points");
  const double lo = -std::numbers::pi / 2;
  const double hi = lo + std::numbers::pi / n;
  if (!(gamma > lo && gamma < hi)) throw InvalidInput("s1_points: gamma must lie in (-pi/2, -pi/2 + pi/n)");
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pts[static_cast<std::size_t>(k)] = a * std::tan(gamma + k * std::numbers::pi / n);
  std::sort(pts.begin(), pts.end());
  return pts;
}

struct S1Solution {
  double gamma;
  double B;
  std::vector<double> points;  // ascending
  Poly poly;                   // monic, real coefficients, roots == points
};

/// Closed-form polynomial F(x) = ((an - Bi)(x+ai)^n + (an + Bi)(x-ai)^n) / (2an),
/// B = a n cot(n pi/2 + n gamma).
[[nodiscard]] inline S1Solution s1_polynomial(double a, int n, double gamma) {
  std::vector<double> pts = s1_points(a, n, gamma);
  const double phase = n * std::numbers::pi / 2 + n * gamma;
  const double sn = std::sin(phase);
  if (std::abs(sn) < 1e-12) throw InvalidInput("s1_polynomial: cot(n pi/2 + n gamma) has a pole");
  const double B = a * n * std::cos(phase) / sn;

  const complex ai{0.0, a};
  const double an = a * n;
  const Poly plus = detail::binomial_power(ai, n);
  const Poly minus = detail::binomial_power(-ai, n);
  const Poly F = (1.0 / (2.0 * an)) * (complex{an, -B} * plus + complex{an, B} * minus);
  return {gamma, B, std::move(pts), F.real_part()};
}

/// n-th weighted diameter for s = 1: n^{1/(n-1)} / (2a).
[[nodiscard]] inline double s1_diameter(double a, int n) {
  detail::require_positive_a(a, "s1_diameter");
  detail::require_n(n, 2, "s1_diameter");
  return std::exp(std::log(static_cast<double>(n)) / (n - 1)) / (2.0 * a);
}

// ---------------------------------------------------------------------------
// s > 1: stationarity ODE and the pseudo-Jacobi solution
// ---------------------------------------------------------------------------

/// Parameters of (x^2 + a^2) f'' - lambda x f' + n (lambda - n + 1) f = 0.
/// lambda in {n-1, ..., 2n-2} is excluded: the monic solution is not unique there.
struct OdeFamily {
  double a;
  double lambda;
  int n;

  OdeFamily(double a_in, double lambda_in, int n_in) : a(a_in), lambda(lambda_in), n(n_in) {
    detail::require_positive_a(a, "OdeFamily");
    detail::require_n(n, 1, "OdeFamily");
    for (int m = n - 1; m <= 2 * n - 2; ++m)
      if (lambda == static_cast<double>(m))
        throw InvalidInput("OdeFamily: lambda must avoid {n-1, ..., 2n-2}, got " + std::to_string(m));
  }
};

/// The unique monic polynomial solution of the family's ODE.
///
/// Coefficients of x^{n-2k} are built as a running product of the ratios
/// c_{n-2k} / c_{n-2k+2} = -a^2 (n-2k+2)(n-2k+1) / (2k (lambda - 2n + 2k + 1)),
/// which is the closed form with C(n,2k) (2k-1)!! / prod(lambda - 2n + 2j + 1)
/// accumulated without forming its large factors separately.
[[nodiscard]] inline Poly ode_monic_solution(const OdeFamily& fam) {
  const int n = fam.n;
  const double a2 = fam.a * fam.a;
  std::vector<complex> cs(static_cast<std::size_t>(n) + 1, complex{0.0});
  cs[static_cast<std::size_t>(n)] = 1.0;
  double c = 1.0;
  for (int k = 1; 2 * k <= n; ++k) {
    const double denom = fam.lambda - 2.0 * n + 2.0 * k + 1.0;
    if (std::abs(denom) < 1e-12)
      throw SingularParameter("ode_monic_solution: denominator lambda - 2n + 2j + 1 vanishes at j = " +
                              std::to_string(k));
    c *= -a2 * (n - 2.0 * k + 2.0) * (n - 2.0 * k + 1.0) / (2.0 * k * denom);
    cs[static_cast<std::size_t>(n - 2 * k)] = c;
  }
  return Poly(std::move(cs));
}

/// G(x): the monic polynomial whose roots are the weighted Fekete points for
/// w(x) = |x - a i|^{-s}, s > 1. Equals the ODE solution at lambda = 2s(n-1).
[[nodiscard]] inline Poly pseudo_jacobi(double a, double s, int n) {
  detail::require_positive_a(a, "pseudo_jacobi");
  detail::require_s_gt1(s, "pseudo_jacobi");
  detail::require_n(n, 2, "pseudo_jacobi");
  return ode_monic_solution(OdeFamily(a, 2.0 * s * (n - 1), n));
}

/// Step coefficient of the fixed-sigma three-term recurrence
///   G_n = x G_{n-1} - rec(n) G_{n-2},
///   rec(n) = (n-1)(2 sigma - n + 3) / ((2 sigma - 2n + 3)(2 sigma - 2n + 5)).
[[nodiscard]] inline double recurrence_coefficient(double sigma, int n) {
  const double d = (2 * sigma - 2.0 * n + 3) * (2 * sigma - 2.0 * n + 5);
  if (std::abs(d) < 1e-12)
    throw SingularParameter("recurrence_family: zero denominator at step n = " + std::to_string(n));
  return (n - 1.0) * (2 * sigma - n + 3.0) / d;
}

/// G_0 = 1, G_1 = x, ..., G_{n_max} for fixed sigma (a = 1).
/// Member n coincides with ode_monic_solution(a = 1, lambda = 2 sigma, n).
[[nodiscard]] inline std::vector<Poly> recurrence_family(double sigma, int n_max) {
  detail::require_n(n_max, 2, "recurrence_family");
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  out.push_back(Poly::constant(1.0));
  out.push_back(Poly::monomial(1));
  const Poly x = Poly::monomial(1);
  for (int n = 2; n <= n_max; ++n) {
    const double c = recurrence_coefficient(sigma, n);
    out.push_back(x * out[static_cast<std::size_t>(n - 1)] - complex{c} * out[static_cast<std::size_t>(n - 2)]);
  }
  return out;
}

/// Roots of pseudo_jacobi(a, s, n), ascending.
///
/// G is member n of the recurrence with sigma = s(n-1), all step coefficients
/// positive, so its roots are the eigenvalues of the symmetric tridiagonal
/// matrix with zero diagonal and off-diagonal a sqrt(rec(k)), k = 2..n.
/// Avoids the monomial basis, whose conditioning degrades quickly with n.
[[nodiscard]] inline std::vector<double> pseudo_jacobi_roots(double a, double s, int n) {
  detail::require_positive_a(a, "pseudo_jacobi_roots");
  detail::require_s_gt1(s, "pseudo_jacobi_roots");
  detail::require_n(n, 2, "pseudo_jacobi_roots");
  const double sigma = s * (n - 1);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 2; k <= n; ++k) sub(k - 2) = a * std::sqrt(recurrence_coefficient(sigma, k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(out.begin(), out.end());
  // Exact symmetry about 0.
  for (int k = 0; k < n / 2; ++k) {
    const double m = 0.5 * (out[static_cast<std::size_t>(n - 1 - k)] - out[static_cast<std::size_t>(k)]);
    out[static_cast<std::size_t>(k)] = -m;
    out[static_cast<std::size_t>(n - 1 - k)] = m;
  }
  if (n % 2 == 1) out[static_cast<std::size_t>(n / 2)] = 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi polynomials with arbitrary real parameters
// ---------------------------------------------------------------------------

/// P_n^{(alpha,beta)}(x) = 2^{-n} sum_k C(n+alpha, n-k) C(n+beta, k) (x-1)^k (x+1)^{n-k}.
[[nodiscard]] inline Poly jacobi(double alpha, double beta, int n) {
  if (n < 0) throw InvalidInput("jacobi: n must be >= 0");
  using wide = boost::multiprecision::cpp_bin_float_quad;
  const auto len = static_cast<std::size_t>(n) + 1;
  auto gbin = [](const wide& t, int k) {
    wide acc = 1;
    for (int j = 0; j < k; ++j) acc *= (t - j) / (j + 1);
    return acc;
  };
  std::vector<wide> sum(len, wide(0));
  std::vector<wide> term(len);
  for (int k = 0; k <= n; ++k) {
    // (x - 1)^k (x + 1)^{n-k}
    std::fill(term.begin(), term.end(), wide(0));
    term[0] = 1;
    for (int j = 0; j < n; ++j) {
      const int c = j < k ? -1 : 1;
      for (auto i = static_cast<std::size_t>(j) + 1; i >= 1; --i) term[i] = term[i - 1] + c * term[i];
      term[0] *= c;
    }
    const wide w = gbin(wide(n) + alpha, n - k) * gbin(wide(n) + beta, k);
    for (std::size_t i = 0; i < len; ++i) sum[i] += w * term[i];
  }
  const double scale = std::ldexp(1.0, -n);
  std::vector<complex> cs(len);
  for (std::size_t i = 0; i < len; ++i) cs[i] = static_cast<double>(sum[i] * scale);
  return Poly(std::move(cs));
}

/// Closed-form discriminant of P_n^{(alpha,beta)} in log form:
/// 2^{-n(n-1)} prod_k k^{k-2n+2} (k+alpha)^{k-1} (k+beta)^{k-1} (n+k+alpha+beta)^{n-k}.
[[nodiscard]] inline SignedLog log_jacobi_discriminant(double alpha, double beta, int n) {
  detail::require_n(n, 2, "jacobi_discriminant");
  for (int k = 1; k <= n; ++k)
    if (std::abs(alpha + beta + n + k) < 1e-12)
      throw InvalidInput("jacobi_discriminant: alpha + beta = -n - k (vanishing leading coefficient)");
  SignedLog acc{-static_cast<double>(n) * (n - 1) * std::numbers::ln2, 1};
  for (int k = 1; k <= n; ++k) {
    acc = acc * signed_log_pow(k, k - 2 * n + 2);
    acc = acc * signed_log_pow(k + alpha, k - 1);
    acc = acc * signed_log_pow(k + beta, k - 1);
    acc = acc * signed_log_pow(n + k + alpha + beta, n - k);
  }
  return acc;
}

[[nodiscard]] inline double jacobi_discriminant(double alpha, double beta, int n) {
  return log_jacobi_discriminant(alpha, beta, n).value();
}

/// Scale c in G(x) = c P_n^{(p,p)}(-i x / a), p = -s(n-1) - 1, in log-modulus form.
/// c = (2ai)^n n! / (n - 2s(n-1) - 1)_n; the phase is i^n times the Pochhammer sign.
[[nodiscard]] inline complex gj_scale(double a, double s, int n) {
  const SignedLog poch = log_pochhammer(n - 2.0 * s * (n - 1) - 1.0, static_cast<unsigned>(n));
  const double log_mod = n * std::log(2.0 * a) + log_factorial(static_cast<unsigned>(n)) - poch.log_abs;
  const double mod = std::exp(log_mod) * static_cast<double>(poch.sign);
  switch (n % 4) {
    case 0: return {mod, 0.0};
    case 1: return {0.0, mod};
    case 2: return {-mod, 0.0};
    default: return {0.0, -mod};
  }
}

/// c P_n^{(p,p)}(-ix/a) with p = -s(n-1) - 1; equals pseudo_jacobi(a, s, n).
[[nodiscard]] inline Poly pseudo_jacobi_from_jacobi(double a, double s, int n) {
  detail::require_positive_a(a, "pseudo_jacobi_from_jacobi");
  detail::require_s_gt1(s, "pseudo_jacobi_from_jacobi");
  detail::require_n(n, 1, "pseudo_jacobi_from_jacobi");
  const double p = -s * (n - 1) - 1.0;
  return gj_scale(a, s, n) * jacobi(p, p, n).compose_scale(complex{0.0, -1.0 / a});
}

/// log |G(a i)| = log[(2a)^n |(-s(n-1))_n| / |(n - 2s(n-1) - 1)_n|].
[[nodiscard]] inline double log_g_at_ai(double a, double s, int n) {
  detail::require_positive_a(a, "g_at_ai");
  detail::require_s_gt1(s, "g_at_ai");
  detail::require_n(n, 2, "g_at_ai");
  const SignedLog num = log_pochhammer(-s * (n - 1), static_cast<unsigned>(n));
  const SignedLog den = log_pochhammer(n - 2.0 * s * (n - 1) - 1.0, static_cast<unsigned>(n));
  return n * std::log(2.0 * a) + num.log_abs - den.log_abs;
}

[[nodiscard]] inline double g_at_ai(double a, double s, int n) { return std::exp(log_g_at_ai(a, s, n)); }

/// log of the n-th weighted diameter for s > 1, straight from the product formula
///   (2a)^{1-2s} (n!)^{2/n} |(-s(n-1))_n|^{-2s/n} |(n-2s(n-1)-1)_n|^{2(s-1)/n} U,
///   U = (prod_k k^{k-2n+2} |k-s(n-1)-1|^{2k-2} |n+k-2s(n-1)-2|^{n-k})^{1/(n(n-1))}.
[[nodiscard]] inline double sgt1_log_diameter_product(double a, double s, int n) {
  detail::require_positive_a(a, "sgt1_diameter");
  detail::require_s_gt1(s, "sgt1_diameter");
  detail::require_n(n, 2, "sgt1_diameter");
  const double sn = s * (n - 1);
  double log_u = 0.0;
  for (int k = 1; k <= n; ++k) {
    log_u += (k - 2.0 * n + 2.0) * std::log(static_cast<double>(k));
    log_u += (2.0 * k - 2.0) * std::log(std::abs(k - sn - 1.0));
    log_u += (n - static_cast<double>(k)) * std::log(std::abs(n + k - 2.0 * sn - 2.0));
  }
  log_u /= static_cast<double>(n) * (n - 1);
  const double nd = n;
  return (1.0 - 2.0 * s) * std::log(2.0 * a) + (2.0 / nd) * log_factorial(static_cast<unsigned>(n)) -
         (2.0 * s / nd) * log_pochhammer(-sn, static_cast<unsigned>(n)).log_abs +
         (2.0 * (s - 1.0) / nd) * log_pochhammer(n - 2.0 * sn - 1.0, static_cast<unsigned>(n)).log_abs + log_u;
}

/// log |Delta_G| obtained from the Jacobi discriminant through
/// |Delta_G| = |c|^{2n-2} / a^{n(n-1)} |Delta_P|.
[[nodiscard]] inline double log_abs_discriminant_g(double a, double s, int n) {
  const double p = -s * (n - 1) - 1.0;
  const double log_c = std::log(std::abs(gj_scale(a, s, n)));
  return (2.0 * n - 2.0) * log_c - static_cast<double>(n) * (n - 1) * std::log(a) +
         log_jacobi_discriminant(p, p, n).log_abs;
}

/// log of the n-th weighted diameter via |Delta_G|^{1/(n(n-1))} |G(ai)|^{-2s/n}.
[[nodiscard]] inline double sgt1_log_diameter_discriminant(double a, double s, int n) {
  detail::require_positive_a(a, "sgt1_diameter");
  detail::require_s_gt1(s, "sgt1_diameter");
  detail::require_n(n, 2, "sgt1_diameter");
  return log_abs_discriminant_g(a, s, n) / (static_cast<double>(n) * (n - 1)) -
         (2.0 * s / n) * log_g_at_ai(a, s, n);
}

/// n-th weighted diameter on the real line for w(x) = |x - a i|^{-s}, s > 1.
[[nodiscard]] inline double sgt1_diameter(double a, double s, int n) {
  return std::exp(sgt1_log_diameter_product(a, s, n));
}

/// Left-hand side of the stationarity ODE
///   (x^2 + a^2) f'' - 2s(n-1) x f' + n (2s(n-1) - n + 1) f.
[[nodiscard]] inline Poly ode_residual(const Poly& f, double a, double s, int n) {
  if (f.degree() != static_cast<std::size_t>(n) || f.is_zero())
    throw InvalidInput("ode_residual: degree of f must equal n");
  const double lambda = 2.0 * s * (n - 1);
  const Poly d1 = f.derivative();
  const Poly d2 = d1.derivative();
  const Poly quad = Poly::from_real({a * a, 0.0, 1.0});
  return quad * d2 - complex{lambda} * (Poly::monomial(1) * d1) + complex{n * (lambda - n + 1.0)} * f;
}

/// Max residual coefficient relative to the largest contributing term in the same position.
[[nodiscard]] inline double ode_residual_relative(const Poly& f, double a, double s, int n) {
  const Poly res = ode_residual(f, a, s, n);
  const double lambda = 2.0 * s * (n - 1);
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double kk = k;
    const double fk = std::abs(f[static_cast<std::size_t>(k)]);
    const double fk2 = std::abs(f[static_cast<std::size_t>(k + 2)]);
    const double scale = std::max({kk * (kk - 1) * fk, lambda * kk * fk, n * std::abs(lambda - n + 1.0) * fk,
                                   a * a * (kk + 2) * (kk + 1) * fk2});
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(res[static_cast<std::size_t>(k)]) / scale);
  }
  return worst;
}

}  // namespace fekete
