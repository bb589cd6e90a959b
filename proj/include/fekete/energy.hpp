#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <type_traits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fekete/circle.hpp"
#include "fekete/error.hpp"
#include "fekete/real_line.hpp"

namespace fekete {

/// Outcome of a numerical Fekete search. For circle problems `points` holds
/// angles in [0, 2 pi), ascending.
struct FeketeResult {
  std::vector<double> points;
  double log_diameter = 0.0;
  double energy = 0.0;
  double grad_norm = 0.0;  // max-norm of the stationarity residual
  int iterations = 0;
  bool converged = false;
};

struct OptimizerConfig {
  int starts = 8;
  int max_iters = 2000;
  double grad_tol = 1e-10;
  std::uint64_t seed = 0x5eedULL;
  /// Interval constraint for line problems. Defaults to |x| <= 50 a when s = 1.
  std::optional<std::pair<double, double>> box;
};

/// Smallest pairwise gap, 0 for fewer than two points.
[[nodiscard]] inline double min_gap(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < v.size(); ++k) m = std::min(m, v[k] - v[k - 1]);
  return v.size() < 2 ? 0.0 : m;
}

// ---------------------------------------------------------------------------
// Objective: log of prod_{j<k} |z_j - z_k| w(z_j) w(z_k)
// ---------------------------------------------------------------------------

/// sum_{j<k} log|x_j - x_k| + (n-1) sum_k log w(x_k). -inf for coincident points.
[[nodiscard]] inline double log_weighted_vandermonde(std::span<const double> xs, const RealWeight& w) {
  const std::size_t n = xs.size();
  if (n < 2) throw InvalidInput("log_weighted_vandermonde: need at least two points");
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = std::abs(xs[j] - xs[k]);
      if (d == 0.0) return -std::numeric_limits<double>::infinity();
      acc += std::log(d);
    }
  double lw = 0.0;
  for (double x : xs) lw += w.log_weight(x);
  return acc + static_cast<double>(n - 1) * lw;
}

/// Circle variant; `ts` are angles of z_k = e^{i t_k}.
[[nodiscard]] inline double log_weighted_vandermonde(std::span<const double> ts, const CircleWeight& w) {
  const std::size_t n = ts.size();
  if (n < 2) throw InvalidInput("log_weighted_vandermonde: need at least two points");
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = std::abs(2.0 * std::sin(0.5 * (ts[j] - ts[k])));
      if (d == 0.0) return -std::numeric_limits<double>::infinity();
      acc += std::log(d);
    }
  double lw = 0.0;
  for (double t : ts) lw += w.log_weight(t);
  return acc + static_cast<double>(n - 1) * lw;
}

/// log of the weighted diameter attained by a configuration: 2/(n(n-1)) times the above.
template <class Weight>
[[nodiscard]] double log_diameter_of(std::span<const double> pts, const Weight& w) {
  const double n = static_cast<double>(pts.size());
  return 2.0 / (n * (n - 1.0)) * log_weighted_vandermonde(pts, w);
}

/// E_w(Z_n) = -2/(n(n-1)) sum_{j<k} log|z_j - z_k| + (2s/n) sum_k log|z_k - a i|.
[[nodiscard]] inline double discrete_energy(std::span<const double> xs, const RealWeight& w) {
  return -log_diameter_of(xs, w);
}

[[nodiscard]] inline double discrete_energy(std::span<const double> ts, const CircleWeight& w) {
  return -log_diameter_of(ts, w);
}

/// Gradient of g = sum_{j<k} log(x_j - x_k)^2 - s(n-1) sum log(x_k^2 + a^2):
///   sum_{j != k} 2/(x_k - x_j) - 2 s (n-1) x_k / (x_k^2 + a^2).
[[nodiscard]] inline std::vector<double> energy_gradient(std::span<const double> xs, const RealWeight& w) {
  const std::size_t n = xs.size();
  const double field = 2.0 * w.s * static_cast<double>(n - 1);
  std::vector<double> g(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const double d = xs[k] - xs[j];
      if (d == 0.0) throw DegenerateInput("energy_gradient: coincident points");
      g[k] += 2.0 / d;
    }
    g[k] -= field * xs[k] / (xs[k] * xs[k] + w.a * w.a);
  }
  return g;
}

/// Angle-coordinate gradient of g = 2 * log_weighted_vandermonde:
///   sum_{j != k} cot((t_k - t_j)/2) - (n-1) 2b sin t_k / (1 - 2b cos t_k + b^2).
[[nodiscard]] inline std::vector<double> energy_gradient(std::span<const double> ts, const CircleWeight& w) {
  const std::size_t n = ts.size();
  const double b = w.b;
  std::vector<double> g(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const double half = 0.5 * (ts[k] - ts[j]);
      const double sn = std::sin(half);
      if (sn == 0.0) throw DegenerateInput("energy_gradient: coincident points");
      g[k] += std::cos(half) / sn;
    }
    const double den = 1.0 - 2.0 * b * std::cos(ts[k]) + b * b;
    g[k] -= static_cast<double>(n - 1) * 2.0 * b * std::sin(ts[k]) / den;
  }
  return g;
}

namespace detail {

inline Eigen::MatrixXd objective_hessian(std::span<const double> xs, const RealWeight& w) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  const double field = 2.0 * w.s * static_cast<double>(n - 1);
  const double a2 = w.a * w.a;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == k) continue;
      const double d = xs[static_cast<std::size_t>(k)] - xs[static_cast<std::size_t>(j)];
      const double v = 2.0 / (d * d);
      h(k, j) = v;
      h(k, k) -= v;
    }
    const double x = xs[static_cast<std::size_t>(k)];
    const double q = x * x + a2;
    h(k, k) -= field * (a2 - x * x) / (q * q);
  }
  return h;
}

inline Eigen::MatrixXd objective_hessian(std::span<const double> ts, const CircleWeight& w) {
  const auto n = static_cast<Eigen::Index>(ts.size());
  const double b = w.b;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == k) continue;
      const double sn = std::sin(0.5 * (ts[static_cast<std::size_t>(k)] - ts[static_cast<std::size_t>(j)]));
      const double v = 0.5 / (sn * sn);
      h(k, j) = v;
      h(k, k) -= v;
    }
    const double t = ts[static_cast<std::size_t>(k)];
    const double den = 1.0 - 2.0 * b * std::cos(t) + b * b;
    const double second = (2.0 * b * std::cos(t) * den - 4.0 * b * b * std::sin(t) * std::sin(t)) / (den * den);
    h(k, k) -= static_cast<double>(n - 1) * second;
  }
  return h;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Ascent on g = 2 log_weighted_vandermonde from one start.
///
/// Search direction is the Levenberg-regularized Newton direction
/// (mu I - H)^{-1} grad, which degrades to a scaled gradient step when the
/// Hessian is far from negative definite; a backtracking line search
/// enforces monotone ascent, the collision guard and the optional box.
template <class Weight>
FeketeResult ascend(std::vector<double> x, const Weight& w, const OptimizerConfig& cfg,
                    std::optional<std::pair<double, double>> box) {
  constexpr double kMinGap = 1e-12;
  const auto n = static_cast<Eigen::Index>(x.size());
  auto objective = [&](const std::vector<double>& p) { return 2.0 * log_weighted_vandermonde(p, w); };
  auto feasible = [&](const std::vector<double>& p) {
    if (box) {
      for (double v : p)
        if (v < box->first || v > box->second) return false;
    }
    if constexpr (std::is_same_v<Weight, CircleWeight>) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < p.size(); ++j)
        for (std::size_t k = j + 1; k < p.size(); ++k)
          m = std::min(m, std::abs(2.0 * std::sin(0.5 * (p[j] - p[k]))));
      return m >= kMinGap;
    } else {
      return min_gap(p) >= kMinGap;
    }
  };

  FeketeResult res;
  double f = objective(x);
  std::vector<double> grad = energy_gradient(x, w);
  double gn = max_abs(grad);
  int iter = 0;
  double mu_floor = 1e-10;
  for (; iter < cfg.max_iters && gn > cfg.grad_tol; ++iter) {
    const Eigen::Map<const Eigen::VectorXd> g(grad.data(), n);
    const Eigen::MatrixXd neg_h = -objective_hessian(x, w);
    const double diag_scale = std::max(1.0, neg_h.diagonal().cwiseAbs().maxCoeff());
    double mu = mu_floor * diag_scale;
    Eigen::VectorXd dir;
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::LLT<Eigen::MatrixXd> llt(neg_h + mu * Eigen::MatrixXd::Identity(n, n));
      if (llt.info() == Eigen::Success) {
        dir = llt.solve(g);
        if (dir.allFinite()) break;
      }
      mu = std::max(mu * 10.0, 1e-8 * diag_scale);
    }
    if (dir.size() != n || !dir.allFinite()) dir = g / diag_scale;

    const double slope = g.dot(dir);
    bool accepted = false;
    double t = 1.0;
    std::vector<double> trial(x.size());
    for (int ls = 0; ls < 80; ++ls, t *= 0.5) {
      for (Eigen::Index k = 0; k < n; ++k) trial[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + t * dir(k);
      if (!feasible(trial)) continue;
      const double ft = objective(trial);
      if (ft >= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      // Near a maximizer rounding hides the increase; accept a full step that shrinks the residual.
      if (t == 1.0 && std::abs(ft - f) <= 1e-13 * std::max(1.0, std::abs(f))) {
        const double gt = max_abs(energy_gradient(trial, w));
        if (gt < gn) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) break;
    x = trial;
    f = objective(x);
    grad = energy_gradient(x, w);
    gn = max_abs(grad);
  }
  res.points = std::move(x);
  res.iterations = iter;
  res.grad_norm = gn;
  res.converged = gn <= cfg.grad_tol;
  return res;
}

inline std::mt19937_64 start_rng(std::uint64_t seed, int start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start), 0x9e3779b9U};
  return std::mt19937_64(seq);
}

/// Keeps the best result; ties go to the earlier start.
inline void keep_best(std::optional<FeketeResult>& best, FeketeResult cand) {
  auto rank = [](const FeketeResult& r) { return std::pair{r.converged, r.log_diameter}; };
  if (!best || rank(cand) > rank(*best)) best = std::move(cand);
}

}  // namespace detail

/// Multistart numerical maximization of the weighted Vandermonde on the line.
[[nodiscard]] inline FeketeResult optimize(const RealWeight& w, int n, const OptimizerConfig& cfg = {}) {
  if (n < 2) throw InvalidInput("optimize: n must be >= 2");
  if (cfg.starts < 1 || !(cfg.grad_tol > 0.0)) throw InvalidInput("optimize: need starts >= 1 and grad_tol > 0");
  std::optional<std::pair<double, double>> box = cfg.box;
  if (!box && w.s == 1.0) box = std::pair{-50.0 * w.a, 50.0 * w.a};
  if (box && !(box->first < box->second)) throw InvalidInput("optimize: empty box");

  std::optional<FeketeResult> best;
  for (int start = 0; start < cfg.starts; ++start) {
    auto rng = detail::start_rng(cfg.seed, start);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double half_width = w.a * std::exp2(unit(rng));  // in [a/2, 2a]
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double node = -std::cos(std::numbers::pi * (k + 0.5) / n);
      x[static_cast<std::size_t>(k)] = half_width * node + 0.1 * half_width / n * unit(rng);
    }
    if (box)
      for (auto& v : x) v = std::clamp(v, box->first, box->second);
    FeketeResult r = detail::ascend(std::move(x), w, cfg, box);
    std::sort(r.points.begin(), r.points.end());
    r.log_diameter = log_diameter_of(std::span<const double>(r.points), w);
    r.energy = -r.log_diameter;
    detail::keep_best(best, std::move(r));
  }
  return *best;
}

/// Multistart numerical maximization on the unit circle. The reported
/// configuration is rotated in preimage space so its first preimage angle is 0.
[[nodiscard]] inline FeketeResult optimize(const CircleWeight& w, int n, const OptimizerConfig& cfg = {}) {
  if (n < 2) throw InvalidInput("optimize: n must be >= 2");
  if (cfg.starts < 1 || !(cfg.grad_tol > 0.0)) throw InvalidInput("optimize: need starts >= 1 and grad_tol > 0");

  std::optional<FeketeResult> best;
  for (int start = 0; start < cfg.starts; ++start) {
    auto rng = detail::start_rng(cfg.seed, start);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double offset = std::numbers::pi * unit(rng);
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      t[static_cast<std::size_t>(k)] = offset + 2.0 * std::numbers::pi * k / n + 0.3 * std::numbers::pi / n * unit(rng);
    FeketeResult r = detail::ascend(std::move(t), w, cfg, std::nullopt);

    // Gauge: first preimage angle at 0.
    std::vector<double> pre = preimage_angles(w.b, r.points);
    const double shift = pre.front();
    for (auto& p : pre) p -= shift;
    for (std::size_t k = 0; k < pre.size(); ++k)
      r.points[k] = wrap_angle(std::arg(mobius(w.b, std::polar(1.0, pre[k]))));
    std::sort(r.points.begin(), r.points.end());
    r.grad_norm = detail::max_abs(energy_gradient(r.points, w));
    r.converged = r.grad_norm <= cfg.grad_tol;
    r.log_diameter = log_diameter_of(std::span<const double>(r.points), w);
    r.energy = -r.log_diameter;
    detail::keep_best(best, std::move(r));
  }
  return *best;
}

/// prod_{j<k} sin^2(y_j - y_k); bounded by 2^{-n(n-1)} n^n on (-pi/2, pi/2].
[[nodiscard]] inline double sine_product(std::span<const double> ys) {
  if (ys.size() < 2) throw InvalidInput("sine_product: need at least two values");
  double acc = 1.0;
  for (std::size_t j = 0; j < ys.size(); ++j)
    for (std::size_t k = j + 1; k < ys.size(); ++k) {
      const double sn = std::sin(ys[j] - ys[k]);
      acc *= sn * sn;
    }
  return acc;
}

/// 2^{-n(n-1)} n^n
[[nodiscard]] inline double sine_product_bound(int n) {
  return std::exp(n * std::log(static_cast<double>(n)) - static_cast<double>(n) * (n - 1) * std::numbers::ln2);
}

}  // namespace fekete
