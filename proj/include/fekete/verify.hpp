#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fekete/circle.hpp"
#include "fekete/energy.hpp"
#include "fekete/equilibrium.hpp"
#include "fekete/poly.hpp"
#include "fekete/real_line.hpp"

namespace fekete::verify {

/// One invariant: the worst residual seen and the bound it must respect.
struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

namespace detail {

inline Check bound(std::string name, double measured, double tol, std::string note = {}) {
  const bool ok = std::isfinite(measured) && measured <= tol;
  return {std::move(name), measured, tol, ok, std::move(note)};
}

/// Runs body; an exception marks the check failed instead of aborting the battery.
inline Check guarded(const std::string& name, double tol, const std::function<double()>& body) {
  try {
    return bound(name, body(), tol);
  } catch (const std::exception& e) {
    return {name, std::numeric_limits<double>::quiet_NaN(), tol, false, e.what()};
  }
}

inline double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

inline bool hits_excluded_line(double alpha, double beta, int n) {
  for (int k = 1; k <= n; ++k)
    if (std::abs(alpha + beta + n + k) < 1e-9) return true;
  return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Report poly_suite(std::uint64_t seed = 20240601) {
  Report r{"poly", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto disk_point = [&] { return std::polar(std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng)); };

  r.checks.push_back(detail::guarded("roots-eval-roundtrip", 1e-9, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const int deg = 1 + trial % 10;
      std::vector<complex> zs(static_cast<std::size_t>(deg));
      for (auto& z : zs) z = disk_point();
      const Poly p = Poly::from_roots(zs);
      for (const complex& z : roots(p)) worst = std::max(worst, std::abs(p(z)));
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("discriminant-vs-root-product", 1e-8, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int deg = 2 + trial % 7;
      std::vector<complex> zs(static_cast<std::size_t>(deg));
      for (auto& z : zs) z = disk_point();
      const Poly p = Poly::from_roots(zs);
      const auto rs = roots(p);
      complex prod{1.0};
      for (std::size_t j = 0; j < rs.size(); ++j)
        for (std::size_t k = j + 1; k < rs.size(); ++k) prod *= (rs[j] - rs[k]) * (rs[j] - rs[k]);
      worst = std::max(worst, std::abs(discriminant_resultant(p) - prod) / std::abs(prod));
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("pochhammer-split", 1e-12, [&] {
    double worst = 0.0;
    std::uniform_real_distribution<double> tdist(-6.0, 6.0);
    std::uniform_int_distribution<unsigned> len(0, 10);
    for (int trial = 0; trial < 500; ++trial) {
      const double t = tdist(rng);
      const unsigned m = len(rng), n = len(rng);
      const double whole = pochhammer(t, m + n);
      const double parts = pochhammer(t, m) * pochhammer(t + m, n);
      const double scale = std::max(std::abs(whole), std::abs(parts));
      if (scale > 0.0) worst = std::max(worst, std::abs(whole - parts) / scale);
    }
    return worst;
  }));
  return r;
}

// ---------------------------------------------------------------------------

inline Report real_suite(std::uint64_t seed = 20240602) {
  Report r{"real", {}};
  const double ss[] = {1.5, 2.0, 3.25};

  double gj_imag = 0.0;
  r.checks.push_back(detail::guarded("gj-identity", 1e-10, [&] {
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0})
      for (double s : ss)
        for (int n = 2; n <= 20; ++n) {
          const Poly q = pseudo_jacobi_from_jacobi(a, s, n);
          worst = std::max(worst, max_coeff_dev_from(pseudo_jacobi(a, s, n), q));
          gj_imag = std::max(gj_imag, q.max_abs_imag());
        }
    return worst;
  }));
  r.checks.push_back(detail::bound("gj-identity-imaginary-parts", gj_imag, 1e-12));

  r.checks.push_back(detail::guarded("discriminant-transfer", 1e-8, [&] {
    double worst = 0.0;
    for (double a : {1.0, 1.5})
      for (double s : ss)
        for (int n = 2; n <= 8; ++n) {
          const double direct = std::abs(discriminant_resultant(pseudo_jacobi(a, s, n)));
          worst = std::max(worst, std::abs(std::log(direct) - log_abs_discriminant_g(a, s, n)));
        }
    return std::expm1(worst);
  }));

  r.checks.push_back(detail::guarded("jacobi-discriminant-vs-resultant", 1e-8, [&] {
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
      const double sample[] = {-0.5, 1.3, -3.7, -2.0 * (n - 1) - 1.0};
      for (double al : sample)
        for (double be : sample) {
          if (detail::hits_excluded_line(al, be, n)) continue;
          const double closed = jacobi_discriminant(al, be, n);
          worst = std::max(worst, std::abs(discriminant_resultant(jacobi(al, be, n)) - closed) / std::abs(closed));
        }
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("ode-residual", 1e-10, [&] {
    double worst = 0.0;
    for (double a : {1.0, 2.0})
      for (double s : ss)
        for (int n = 2; n <= 30; ++n) worst = std::max(worst, ode_residual_relative(pseudo_jacobi(a, s, n), a, s, n));
    return worst;
  }));

  r.checks.push_back(detail::guarded("recurrence-vs-ode-solution", 1e-12, [&] {
    double worst = 0.0;
    for (double sigma : {3.0, 4.0, 10.0}) {
      const auto fam = recurrence_family(sigma, 15);
      for (int n = 2; n <= 15; ++n) {
        const double lambda = 2.0 * sigma;
        if (lambda >= n - 1 && lambda <= 2 * n - 2 && lambda == std::round(lambda)) continue;
        worst = std::max(worst, max_coeff_rel_diff(ode_monic_solution(OdeFamily(1.0, lambda, n)),
                                                   fam[static_cast<std::size_t>(n)]));
      }
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("diameter-two-routes", 1e-10, [&] {
    double worst = 0.0;
    for (double a : {1.0, 2.0})
      for (double s : ss)
        for (int n = 2; n <= 20; ++n)
          worst = std::max(worst, std::abs(std::expm1(sgt1_log_diameter_product(a, s, n) -
                                                      sgt1_log_diameter_discriminant(a, s, n))));
    return worst;
  }));

  r.checks.push_back(detail::guarded("pseudo-jacobi-roots-real-symmetric", 1e-9, [&] {
    double worst = 0.0;
    for (double s : ss)
      for (int n = 2; n <= 30; ++n) {
        auto rs = roots(pseudo_jacobi(1.0, s, n));
        for (std::size_t k = 0; k < rs.size(); ++k) {
          worst = std::max(worst, std::abs(rs[k].imag()));
          worst = std::max(worst, std::abs(rs[k].real() + rs[rs.size() - 1 - k].real()));
        }
        for (std::size_t k = 1; k < rs.size(); ++k)
          if (!(rs[k].real() - rs[k - 1].real() > 1e-9)) worst = std::max(worst, 1.0);
      }
    return worst;
  }));

  r.checks.push_back(detail::guarded("pseudo-jacobi-roots-inside-support", 0.0, [&] {
    double outside = 0.0;
    for (double a : {1.0, 2.0})
      for (double s : ss)
        for (int n = 2; n <= 30; ++n) {
          const double R = a * support_radius(s);
          for (double x : pseudo_jacobi_roots(a, s, n))
            if (!(std::abs(x) < R)) outside += 1.0;
        }
    return outside;
  }));

  r.checks.push_back(detail::guarded("s1-roots-vs-points", 1e-9, [&] {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int n = 2; n <= 30; ++n) {
      const double lo = -std::numbers::pi / 2, width = std::numbers::pi / n;
      std::uniform_real_distribution<double> frac(0.02, 0.98);
      for (int trial = 0; trial < 10; ++trial) {
        const double gamma = lo + frac(rng) * width;
        if (std::abs(std::sin(n * std::numbers::pi / 2 + n * gamma)) < 1e-3) continue;
        const S1Solution sol = s1_polynomial(1.0, n, gamma);
        const auto rs = roots(sol.poly);
        for (std::size_t k = 0; k < rs.size(); ++k)
          worst = std::max(worst, std::abs(rs[k] - complex{sol.points[k]}) / std::max(1.0, std::abs(sol.points[k])));
      }
    }
    return worst;
  }));
  return r;
}

// ---------------------------------------------------------------------------

inline Report circle_suite(std::uint64_t seed = 20240603) {
  Report r{"circle", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double bs[] = {0.0, 0.5, -0.5, 2.0, -2.0, 10.0};

  r.checks.push_back(detail::guarded("mobius-preserves-circle", 1e-12, [&] {
    double worst = 0.0;
    for (double b : bs)
      for (int k = 0; k < 100; ++k) worst = std::max(worst, std::abs(std::abs(mobius(b, std::polar(1.0, angle(rng)))) - 1.0));
    return worst;
  }));

  r.checks.push_back(detail::guarded("mobius-involution", 1e-12, [&] {
    double worst = 0.0;
    for (double b : bs)
      for (int k = 0; k < 100; ++k) {
        const complex w = std::polar(1.0, angle(rng));
        worst = std::max(worst, std::abs(mobius(b, mobius(b, w)) - w));
      }
    return worst;
  }));

  r.checks.push_back(detail::guarded("diameter-alpha-independence", 1e-9, [&] {
    double worst = 0.0;
    for (double b : {0.0, 0.5, 2.0, -3.0})
      for (int n = 2; n <= 12; ++n)
        for (int j = 0; j < 10; ++j) {
          const double alpha = 2.0 * std::numbers::pi / n * j / 10.0;
          const CircleSolution sol = circle_points(b, n, alpha);
          const double lv = log_weighted_vandermonde(std::span<const double>(sol.angles), CircleWeight(b));
          worst = std::max(worst, std::abs(lv - 0.5 * n * (n - 1) * std::log(circle_diameter(b, n))));
        }
    return worst;
  }));

  r.checks.push_back(detail::guarded("preimages-equispaced", 1e-9, [&] {
    double worst = 0.0;
    for (double b : bs)
      for (int n = 2; n <= 12; ++n) {
        const CircleSolution sol = circle_points(b, n, angle(rng));
        worst = std::max(worst, equispacing_error(preimage_angles(b, sol.angles)));
        for (const complex& z : sol.points) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
      }
    return worst;
  }));

  r.checks.push_back(detail::guarded("diameter-b-structure", 1e-12, [&] {
    double worst = 0.0;
    for (int n = 2; n <= 12; ++n) {
      const double ref = circle_diameter(0.0, n);
      for (double b : bs) worst = std::max(worst, detail::rel(circle_diameter(b, n) * std::abs(1.0 - b * b), ref));
    }
    return worst;
  }));
  return r;
}

// ---------------------------------------------------------------------------

inline Report energy_suite(std::uint64_t seed = 20240604) {
  Report r{"energy", {}};
  std::mt19937_64 rng(seed);

  r.checks.push_back(detail::guarded("gradient-vs-finite-difference", 1e-5, [&] {
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    double worst = 0.0;
    for (double s : {1.0, 1.5, 2.0, 3.25})
      for (int n = 2; n <= 8; ++n) {
        const RealWeight w(1.0, s);
        std::vector<double> x(static_cast<std::size_t>(n));
        do {
          for (auto& v : x) v = coord(rng);
        } while (min_gap(x) < 0.05);
        const auto g = energy_gradient(x, w);
        constexpr double h = 1e-6;
        for (std::size_t k = 0; k < x.size(); ++k) {
          auto xp = x, xm = x;
          xp[k] += h;
          xm[k] -= h;
          const double fd = (2.0 * log_weighted_vandermonde(xp, w) - 2.0 * log_weighted_vandermonde(xm, w)) / (2.0 * h);
          worst = std::max(worst, std::abs(fd - g[k]));
        }
      }
    return worst;
  }));

  r.checks.push_back(detail::guarded("circle-gradient-vs-finite-difference", 1e-5, [&] {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (double b : {0.0, 0.5, 2.0})
      for (int n = 2; n <= 8; ++n) {
        const CircleWeight w(b);
        std::vector<double> t(static_cast<std::size_t>(n));
        do {
          for (auto& v : t) v = angle(rng);
        } while (min_gap(t) < 0.05);
        const auto g = energy_gradient(t, w);
        constexpr double h = 1e-6;
        for (std::size_t k = 0; k < t.size(); ++k) {
          auto tp = t, tm = t;
          tp[k] += h;
          tm[k] -= h;
          const double fd = (2.0 * log_weighted_vandermonde(tp, w) - 2.0 * log_weighted_vandermonde(tm, w)) / (2.0 * h);
          worst = std::max(worst, std::abs(fd - g[k]));
        }
      }
    return worst;
  }));

  r.checks.push_back(detail::guarded("stationarity-at-pseudo-jacobi-roots", 1e-8, [&] {
    double worst = 0.0;
    for (int n = 2; n <= 12; ++n) {
      const auto g = energy_gradient(pseudo_jacobi_roots(1.0, 2.0, n), RealWeight(1.0, 2.0));
      for (double v : g) worst = std::max(worst, std::abs(v));
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("diameter-scaling-a", 1e-10, [&] {
    // X -> 2X with a -> 2a rescales the diameter by 2^{1-2s}.
    double worst = 0.0;
    for (int n = 2; n <= 10; ++n) {
      const auto x = pseudo_jacobi_roots(1.0, 2.0, n);
      std::vector<double> x2(x.size());
      std::transform(x.begin(), x.end(), x2.begin(), [](double v) { return 2.0 * v; });
      const double d1 = std::exp(log_diameter_of(std::span<const double>(x), RealWeight(1.0, 2.0)));
      const double d2 = std::exp(log_diameter_of(std::span<const double>(x2), RealWeight(2.0, 2.0)));
      worst = std::max(worst, detail::rel(d2, std::pow(2.0, -3.0) * d1));
      worst = std::max(worst, detail::rel(d2, sgt1_diameter(2.0, 2.0, n)));
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("energy-equals-minus-log-diameter", 1e-12, [&] {
    double worst = 0.0;
    for (int n = 2; n <= 10; ++n) {
      const auto x = pseudo_jacobi_roots(1.0, 1.5, n);
      const RealWeight w(1.0, 1.5);
      worst = std::max(worst, std::abs(discrete_energy(x, w) + log_diameter_of(std::span<const double>(x), w)));
    }
    return worst;
  }));

  double max_ratio = 0.0;
  r.checks.push_back(detail::guarded("sine-product-bound", 0.0, [&] {
    std::uniform_real_distribution<double> y(-std::numbers::pi / 2, std::numbers::pi / 2);
    double exceed = 0.0;
    for (int n = 2; n <= 6; ++n) {
      const double cap = sine_product_bound(n);
      std::vector<double> ys(static_cast<std::size_t>(n));
      for (int trial = 0; trial < 1000; ++trial) {
        for (auto& v : ys) v = y(rng);
        const double p = sine_product(ys);
        max_ratio = std::max(max_ratio, p / cap);
        if (p > cap) exceed = std::max(exceed, p - cap);
      }
    }
    return exceed;
  }));
  r.checks.back().note = "largest ratio to bound " + std::to_string(max_ratio);

  r.checks.push_back(detail::guarded("sine-product-equality", 1e-12, [&] {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
      std::vector<double> ys(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) ys[static_cast<std::size_t>(k)] = -std::numbers::pi / 2 + std::numbers::pi * (k + 1) / n;
      worst = std::max(worst, detail::rel(sine_product(ys), sine_product_bound(n)));
    }
    return worst;
  }));
  return r;
}

// ---------------------------------------------------------------------------

inline Report equilibrium_suite() {
  Report r{"equilibrium", {}};

  r.checks.push_back(detail::guarded("total-mass", 1e-8, [&] {
    std::vector<MeasureSpec> ms;
    for (double s : {1.5, 2.0, 5.0}) ms.push_back(MeasureSpec::real_s(s));
    ms.push_back(MeasureSpec::arctan());
    for (double b : {0.0, 0.5, 2.0, -0.5}) ms.push_back(MeasureSpec::circle_poisson(b));
    for (double rr : {1.0, std::sqrt(3.0)}) {
      ms.push_back(MeasureSpec::harmonic_inf(rr));
      ms.push_back(MeasureSpec::harmonic_i(rr));
    }
    double worst = 0.0;
    for (const auto& m : ms) worst = std::max(worst, std::abs(total_mass(m) - 1.0));
    return worst;
  }));

  r.checks.push_back(detail::guarded("harmonic-combination", 1e-10, [&] {
    const double s = 2.0, R = std::sqrt(3.0);
    double worst = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double x = -R + 2.0 * R * k / 101.0;
      const double combo = s * density(MeasureSpec::harmonic_i(R), x) - (s - 1.0) * density(MeasureSpec::harmonic_inf(R), x);
      worst = std::max(worst, std::abs(combo - density(MeasureSpec::real_s(s), x)));
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("endpoint-density-vanishes", 0.0, [&] {
    double worst = 0.0;
    for (double s : {1.5, 2.0, 5.0}) {
      const double R = support_radius(s);
      worst = std::max({worst, density(MeasureSpec::real_s(s), R), density(MeasureSpec::real_s(s), -R)});
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("robin-constant-expansion", 1e-12, [&] {
    double worst = 0.0;
    for (double s : {1.5, 2.0, 5.0}) {
      const double v = -((2 * s - 1) * (2 * s - 1) / 2) * std::log(2 * s - 1) + (s - 1) * (s - 1) * std::log(s - 1) +
                       s * s * std::log(s) + (2 * s * s - 2 * s + 1) * std::numbers::ln2;
      worst = std::max(worst, std::abs(-std::log(capacity_real(s)) - v));
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("cdf-monotone-normalized", 1e-8, [&] {
    double worst = 0.0;
    std::vector<MeasureSpec> ms{MeasureSpec::real_s(2.0), MeasureSpec::real_s(1.5), MeasureSpec::harmonic_inf(1.0),
                                MeasureSpec::harmonic_i(std::sqrt(3.0)), MeasureSpec::circle_poisson(0.5)};
    for (const auto& m : ms) {
      const Interval sup = m.support();
      worst = std::max({worst, std::abs(cdf(m, sup.lo)), std::abs(cdf(m, sup.hi) - 1.0)});
      double prev = 0.0;
      for (int k = 0; k <= 200; ++k) {
        const double c = cdf(m, sup.lo + (sup.hi - sup.lo) * k / 200.0);
        if (c < prev) worst = std::max(worst, prev - c);
        prev = c;
      }
    }
    return worst;
  }));

  r.checks.push_back(detail::guarded("modified-robin-consistency", 1e-6, [&] {
    double worst = 0.0;
    for (double s : {1.5, 2.0, 5.0})
      worst = std::max(worst, std::abs(modified_robin_constant(s) - (-log_capacity_real(s) + mean_log_weight(s))));
    return worst;
  }));

  EquilibriumReport frost{};
  r.checks.push_back(detail::guarded("frostman-inequality", 1e-6, [&] {
    std::vector<double> grid(201);
    for (int k = 0; k <= 200; ++k) grid[static_cast<std::size_t>(k)] = -3.0 + 6.0 * k / 200.0;
    frost = frostman_check(2.0, grid);
    if (!frost.all_ok()) return std::numeric_limits<double>::infinity();
    return std::max(frost.frostman_max_violation, 0.0);
  }));
  r.checks.push_back(detail::bound("frostman-equality-on-support", frost.frostman_max_onsupport_deviation, 1e-6));
  return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"poly", "real", "circle", "energy", "equilibrium"};
  return names;
}

/// Runs one suite by name, or every suite for "all". Unknown names throw InvalidInput.
inline std::vector<Report> run(std::string_view suite) {
  std::vector<Report> out;
  auto want = [&](std::string_view s) { return suite == "all" || suite == s; };
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw InvalidInput("unknown verification suite '" + std::string(suite) + "'");
  if (want("poly")) out.push_back(poly_suite());
  if (want("real")) out.push_back(real_suite());
  if (want("circle")) out.push_back(circle_suite());
  if (want("energy")) out.push_back(energy_suite());
  if (want("equilibrium")) out.push_back(equilibrium_suite());
  return out;
}

}  // namespace fekete::verify
