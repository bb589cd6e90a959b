#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fekete/energy.hpp"

using std::numbers::pi;

namespace {

// Frozen from tests/oracles/derive_values.py
constexpr double kInvSqrt3 = 0.57735026918962576451;
constexpr double kLogV2S2 = -0.43152310867767139116;
constexpr double kDelta2S2 = 0.64951905283832898507;
constexpr double kSin2Tenth = 0.0099667110793791844379;

std::vector<double> pair(double t) { return {-t, t}; }

}  // namespace

TEST(Vandermonde, SpecExamples) {
  const auto one = pair(1.0);
  EXPECT_NEAR(fekete::log_weighted_vandermonde(one, fekete::RealWeight(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(fekete::log_diameter_of(std::span<const double>(one), fekete::RealWeight(1, 1)), 0.0, 1e-15);

  const auto x = pair(kInvSqrt3);
  EXPECT_NEAR(fekete::log_weighted_vandermonde(x, fekete::RealWeight(1, 2)), kLogV2S2, 1e-15);

  const std::vector<double> t{0.0, pi};
  EXPECT_NEAR(fekete::log_weighted_vandermonde(t, fekete::CircleWeight(0.5)), std::log(8.0 / 3.0), 1e-15);
}

TEST(Vandermonde, CoincidentPointsAreMinusInfinity) {
  const std::vector<double> x{0.3, 0.3, 1.0};
  EXPECT_EQ(fekete::log_weighted_vandermonde(x, fekete::RealWeight(1, 2)), -std::numeric_limits<double>::infinity());
  const std::vector<double> t{0.3, 0.3};
  EXPECT_EQ(fekete::log_weighted_vandermonde(t, fekete::CircleWeight(0.5)), -std::numeric_limits<double>::infinity());
}

TEST(DiscreteEnergy, SpecExamples) {
  EXPECT_NEAR(fekete::discrete_energy(pair(kInvSqrt3), fekete::RealWeight(1, 2)), -kLogV2S2, 1e-15);
  EXPECT_NEAR(fekete::discrete_energy(pair(kInvSqrt3), fekete::RealWeight(1, 2)), -std::log(kDelta2S2), 1e-15);
  EXPECT_NEAR(fekete::discrete_energy(pair(1.0), fekete::RealWeight(1, 1)), 0.0, 1e-15);
  // {-t, t} is minimized at t = 1/sqrt(3)
  const fekete::RealWeight w(1, 2);
  const double e0 = fekete::discrete_energy(pair(kInvSqrt3), w);
  for (double dt : {-1e-3, 1e-3, -0.1, 0.1}) EXPECT_GT(fekete::discrete_energy(pair(kInvSqrt3 + dt), w), e0);
}

TEST(DiscreteEnergy, ExplicitSum) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 2; n <= 8; ++n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = u(rng);
    const double a = 1.3, s = 1.7;
    double pairs = 0.0, field = 0.0;
    for (int j = 0; j < n; ++j) {
      field += 0.5 * std::log(x[j] * x[j] + a * a);
      for (int k = j + 1; k < n; ++k) pairs += std::log(std::abs(x[j] - x[k]));
    }
    const double want = -2.0 / (n * (n - 1)) * pairs + 2.0 * s / n * field;
    EXPECT_NEAR(fekete::discrete_energy(x, fekete::RealWeight(a, s)), want, 1e-12);
  }
}

TEST(Gradient, SpecExamples) {
  auto g = fekete::energy_gradient(pair(kInvSqrt3), fekete::RealWeight(1, 2));
  EXPECT_NEAR(g[0], 0.0, 1e-14);
  EXPECT_NEAR(g[1], 0.0, 1e-14);
  g = fekete::energy_gradient(pair(1.0), fekete::RealWeight(1, 2));
  EXPECT_NEAR(g[0], 1.0, 1e-15);
  EXPECT_NEAR(g[1], -1.0, 1e-15);
  const auto roots = fekete::pseudo_jacobi_roots(1.0, 2.0, 5);
  for (double v : fekete::energy_gradient(roots, fekete::RealWeight(1, 2))) EXPECT_LE(std::abs(v), 1e-8);
}

TEST(Gradient, CoincidentPointsThrow) {
  const std::vector<double> x{0.5, 0.5};
  EXPECT_THROW((void)fekete::energy_gradient(x, fekete::RealWeight(1, 2)), fekete::DegenerateInput);
}

TEST(Gradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  constexpr double h = 1e-6;
  for (double s : {1.0, 1.5, 2.0, 4.0})
    for (int n = 2; n <= 8; ++n) {
      const fekete::RealWeight w(0.8, s);
      std::vector<double> x(static_cast<std::size_t>(n));
      do {
        for (auto& v : x) v = u(rng);
      } while (fekete::min_gap(x) < 0.05);
      const auto g = fekete::energy_gradient(x, w);
      for (std::size_t k = 0; k < x.size(); ++k) {
        auto xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        const double fd = (fekete::log_weighted_vandermonde(xp, w) - fekete::log_weighted_vandermonde(xm, w)) / h;
        EXPECT_NEAR(g[k], fd, 1e-5);
      }
    }
}

TEST(Gradient, CircleMatchesCentralDifferences) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 2 * pi);
  constexpr double h = 1e-6;
  for (double b : {0.0, 0.5, 2.0, -4.0})
    for (int n = 2; n <= 8; ++n) {
      const fekete::CircleWeight w(b);
      std::vector<double> t(static_cast<std::size_t>(n));
      do {
        for (auto& v : t) v = u(rng);
      } while (fekete::min_gap(t) < 0.05);
      const auto g = fekete::energy_gradient(t, w);
      for (std::size_t k = 0; k < t.size(); ++k) {
        auto tp = t, tm = t;
        tp[k] += h;
        tm[k] -= h;
        const double fd = (fekete::log_weighted_vandermonde(tp, w) - fekete::log_weighted_vandermonde(tm, w)) / h;
        EXPECT_NEAR(g[k], fd, 1e-5);
      }
    }
}

TEST(Scaling, DiameterRescalesWithA) {
  for (int n = 2; n <= 10; ++n) {
    const auto x = fekete::pseudo_jacobi_roots(1.0, 2.0, n);
    std::vector<double> x2(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) x2[k] = 2.0 * x[k];
    const double d1 = std::exp(fekete::log_diameter_of(std::span<const double>(x), fekete::RealWeight(1, 2)));
    const double d2 = std::exp(fekete::log_diameter_of(std::span<const double>(x2), fekete::RealWeight(2, 2)));
    EXPECT_NEAR(d2 / (d1 / 8.0), 1.0, 1e-10);
    EXPECT_NEAR(d1 / fekete::sgt1_diameter(1, 2, n), 1.0, 1e-10);
    EXPECT_NEAR(d2 / fekete::sgt1_diameter(2, 2, n), 1.0, 1e-10);
  }
}

TEST(Optimize, SpecExamples) {
  auto r = fekete::optimize(fekete::RealWeight(1, 2), 2);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.points[0], -kInvSqrt3, 1e-6);
  EXPECT_NEAR(r.points[1], kInvSqrt3, 1e-6);
  EXPECT_NEAR(r.log_diameter, std::log(kDelta2S2), 1e-8);
  EXPECT_NEAR(r.energy, -r.log_diameter, 1e-12);

  r = fekete::optimize(fekete::CircleWeight(0.5), 2);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(std::exp(r.log_diameter), 8.0 / 3.0, 1e-6);
  EXPECT_NEAR(std::abs(std::polar(1.0, r.points[0]) + std::polar(1.0, r.points[1])), 0.0, 1e-6);

  fekete::OptimizerConfig cfg;
  cfg.box = std::pair{-50.0, 50.0};
  r = fekete::optimize(fekete::RealWeight(1, 1), 3, cfg);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.energy, -std::log(std::sqrt(3.0) / 2.0), 1e-8);
  for (std::size_t k = 1; k < r.points.size(); ++k)
    EXPECT_NEAR(std::atan(r.points[k]) - std::atan(r.points[k - 1]), pi / 3, 1e-5);
}

TEST(Optimize, DeterministicGivenSeed) {
  fekete::OptimizerConfig cfg;
  cfg.seed = 99;
  const auto a = fekete::optimize(fekete::RealWeight(1, 1.5), 7, cfg);
  const auto b = fekete::optimize(fekete::RealWeight(1, 1.5), 7, cfg);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.log_diameter, b.log_diameter);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Optimize, ReportsNonConvergenceInBand) {
  fekete::OptimizerConfig cfg;
  cfg.max_iters = 1;
  cfg.starts = 1;
  cfg.grad_tol = 1e-14;
  const auto r = fekete::optimize(fekete::RealWeight(1, 2), 9, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.points.size(), 9u);
  EXPECT_GT(fekete::min_gap(r.points), 0.0);
}

TEST(Optimize, CircleGaugeFirstPreimageAtZero) {
  for (double b : {0.5, 2.0}) {
    const auto r = fekete::optimize(fekete::CircleWeight(b), 6);
    ASSERT_TRUE(r.converged);
    double nearest = 1.0;
    for (double p : fekete::preimage_angles(b, r.points)) nearest = std::min(nearest, std::abs(std::sin(0.5 * p)));
    EXPECT_NEAR(nearest, 0.0, 1e-9);
  }
}

TEST(Optimize, RejectsBadConfig) {
  fekete::OptimizerConfig cfg;
  cfg.starts = 0;
  EXPECT_THROW((void)fekete::optimize(fekete::RealWeight(1, 2), 3, cfg), fekete::InvalidInput);
  EXPECT_THROW((void)fekete::optimize(fekete::RealWeight(1, 2), 1), fekete::InvalidInput);
}

TEST(SineProduct, SpecExamples) {
  EXPECT_NEAR(fekete::sine_product(std::vector<double>{0.0, pi / 2}), 1.0, 1e-15);
  EXPECT_NEAR(fekete::sine_product_bound(2), 1.0, 1e-15);
  const std::vector<double> ap{-pi / 3, 0.0, pi / 3};
  EXPECT_NEAR(fekete::sine_product(ap), 27.0 / 64.0, 1e-15);
  EXPECT_NEAR(fekete::sine_product_bound(3), 27.0 / 64.0, 1e-15);
  EXPECT_NEAR(fekete::sine_product(std::vector<double>{0.0, 0.1}), kSin2Tenth, 1e-17);
}

TEST(SineProduct, BoundHoldsAndIsAttained) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> y(-pi / 2, pi / 2);
  for (int n = 2; n <= 6; ++n) {
    const double cap = fekete::sine_product_bound(n);
    std::vector<double> ys(static_cast<std::size_t>(n));
    for (int trial = 0; trial < 1000; ++trial) {
      for (auto& v : ys) v = y(rng);
      EXPECT_LE(fekete::sine_product(ys), cap);
    }
    for (double start : {-pi / 2 + 1e-3, -0.4, 0.0}) {
      for (int k = 0; k < n; ++k) ys[static_cast<std::size_t>(k)] = start + pi * k / n;
      EXPECT_NEAR(fekete::sine_product(ys) / cap, 1.0, 1e-12);
    }
  }
}
