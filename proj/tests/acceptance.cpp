// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fekete/circle.hpp"
#include "fekete/energy.hpp"
#include "fekete/equilibrium.hpp"
#include "fekete/poly.hpp"
#include "fekete/real_line.hpp"

using namespace fekete;
using std::numbers::pi;

namespace {

/// Accumulates named sub-measurements; a criterion passes iff every one is within its bound.
struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> failures;
  std::string summary;

  void bound(const std::string& what, double measured, double tol) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s=%.3g (tol %.0e)", what.c_str(), measured, tol);
    if (!summary.empty()) summary += "; ";
    summary += buf;
    if (!(std::isfinite(measured) && measured <= tol)) failures.push_back(buf);
  }
  void require(const std::string& what, bool ok) {
    if (!summary.empty()) summary += "; ";
    summary += what + (ok ? " ok" : " violated");
    if (!ok) failures.push_back(what);
  }
};

int g_failed = 0;

void criterion(int id, const std::string& title, const std::function<void(Criterion&)>& body) {
  Criterion c{id, title, {}, {}};
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
    c.summary += std::string(c.summary.empty() ? "" : "; ") + "exception: " + e.what();
  }
  const bool ok = c.failures.empty();
  if (!ok) ++g_failed;
  std::printf("%s criterion %d: %s [%s]\n", ok ? "PASS" : "FAIL", id, title.c_str(), c.summary.c_str());
  std::fflush(stdout);
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

struct Outcome {
  int code;
  std::string out;
};

Outcome run_cli(const std::string& args) {
  const std::string cmd = std::string("FEKETE_LOG=off ") + FEKETE_CLI + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, got);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

/// Numbers following `"key":` in a flat JSON report, in order.
std::vector<double> json_numbers(const std::string& s, const std::string& key) {
  std::vector<double> v;
  const std::string tag = "\"" + key + "\":";
  std::size_t pos = s.find(tag);
  if (pos == std::string::npos) return v;
  pos += tag.size();
  const bool array = s[pos] == '[';
  if (array) ++pos;
  while (pos < s.size()) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str() + pos, &end);
    if (end == s.c_str() + pos) break;
    v.push_back(x);
    pos = static_cast<std::size_t>(end - s.c_str());
    if (!array || s[pos] != ',') break;
    ++pos;
  }
  return v;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) g[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  return g;
}

}  // namespace

int main() {
  criterion(1, "closed form vs optimizer, line s>1", [](Criterion& c) {
    double pts = 0.0, diam = 0.0;
    bool converged = true;
    for (double s : {1.5, 2.0})
      for (int n = 2; n <= 12; ++n) {
        const FeketeResult r = optimize(RealWeight(1.0, s), n);
        converged = converged && r.converged;
        const auto roots = pseudo_jacobi_roots(1.0, s, n);
        for (std::size_t k = 0; k < roots.size(); ++k) pts = std::max(pts, std::abs(r.points[k] - roots[k]));
        diam = std::max(diam, rel(std::exp(r.log_diameter), sgt1_diameter(1.0, s, n)));
      }
    c.require("optimizer converged", converged);
    c.bound("max point error", pts, 1e-6);
    c.bound("max diameter rel error", diam, 1e-8);
  });

  criterion(2, "closed form vs optimizer, line s=1", [](Criterion& c) {
    double energy = 0.0, gaps = 0.0;
    bool converged = true;
    for (int n = 2; n <= 10; ++n) {
      const FeketeResult r = optimize(RealWeight(1.0, 1.0), n);
      converged = converged && r.converged;
      energy = std::max(energy, std::abs(r.energy + std::log(std::pow(n, 1.0 / (n - 1)) / 2.0)));
      for (std::size_t k = 1; k < r.points.size(); ++k)
        gaps = std::max(gaps, std::abs(std::atan(r.points[k]) - std::atan(r.points[k - 1]) - pi / n));
    }
    c.require("optimizer converged", converged);
    c.bound("max energy error", energy, 1e-8);
    c.bound("max arctan gap error", gaps, 1e-5);
  });

  criterion(3, "closed form vs optimizer, circle", [](Criterion& c) {
    double diam = 0.0, spacing = 0.0;
    bool converged = true;
    for (double b : {0.0, 0.5, 2.0})
      for (int n = 2; n <= 12; ++n) {
        const FeketeResult r = optimize(CircleWeight(b), n);
        converged = converged && r.converged;
        diam = std::max(diam, rel(std::exp(r.log_diameter), std::pow(n, 1.0 / (n - 1)) / std::abs(1 - b * b)));
        spacing = std::max(spacing, equispacing_error(preimage_angles(b, r.points)));
      }
    c.require("optimizer converged", converged);
    c.bound("max diameter rel error", diam, 1e-6);
    c.bound("max preimage spacing error", spacing, 1e-5);
  });

  criterion(4, "discriminant oracle", [](Criterion& c) {
    double jac = 0.0, transfer = 0.0;
    for (int n = 2; n <= 8; ++n) {
      const double sample[] = {-0.5, 1.3, -3.7, -2.0 * (n - 1) - 1.0};
      for (double al : sample)
        for (double be : sample) {
          bool excluded = false;
          for (int k = 1; k <= n; ++k) excluded = excluded || std::abs(al + be + n + k) < 1e-9;
          if (excluded) continue;
          const double closed = jacobi_discriminant(al, be, n);
          jac = std::max(jac, rel(discriminant_resultant(jacobi(al, be, n)).real(), closed) +
                                  std::abs(discriminant_resultant(jacobi(al, be, n)).imag()) / std::abs(closed));
        }
      for (double a : {0.5, 1.0, 2.0})
        for (double s : {1.5, 2.0, 3.25}) {
          const double direct = std::abs(discriminant_resultant(pseudo_jacobi(a, s, n)));
          transfer = std::max(transfer, std::abs(std::expm1(std::log(direct) - log_abs_discriminant_g(a, s, n))));
        }
    }
    c.bound("jacobi closed form vs resultant", jac, 1e-8);
    c.bound("pseudo-Jacobi transfer", transfer, 1e-8);
  });

  criterion(5, "identity battery", [](Criterion& c) {
    double gj = 0.0, gj_imag = 0.0, ode = 0.0, rec = 0.0, routes = 0.0;
    for (double a : {0.5, 1.0, 2.0})
      for (double s : {1.5, 2.0, 3.25}) {
        for (int n = 2; n <= 20; ++n) {
          const Poly q = pseudo_jacobi_from_jacobi(a, s, n);
          gj = std::max(gj, max_coeff_dev_from(pseudo_jacobi(a, s, n), q));
          gj_imag = std::max(gj_imag, q.max_abs_imag());
          routes = std::max(routes, std::abs(std::expm1(sgt1_log_diameter_product(a, s, n) -
                                                        sgt1_log_diameter_discriminant(a, s, n))));
        }
        for (int n = 2; n <= 30; ++n) ode = std::max(ode, ode_residual_relative(pseudo_jacobi(a, s, n), a, s, n));
      }
    for (double sigma : {3.0, 4.0, 10.0}) {
      const auto fam = recurrence_family(sigma, 15);
      for (int n = 2; n <= 15; ++n) {
        const double lambda = 2.0 * sigma;
        if (lambda >= n - 1 && lambda <= 2 * n - 2 && lambda == std::round(lambda)) continue;
        rec = std::max(rec, max_coeff_rel_diff(ode_monic_solution(OdeFamily(1.0, lambda, n)),
                                               fam[static_cast<std::size_t>(n)]));
      }
    }
    c.bound("GJ relation", gj, 1e-10);
    c.bound("GJ imaginary residue", gj_imag, 1e-12);
    c.bound("ODE residual", ode, 1e-10);
    c.bound("recurrence vs ODE solution", rec, 1e-12);
    c.bound("diameter routes", routes, 1e-10);
  });

  criterion(6, "spot values", [](Criterion& c) {
    c.bound("delta_2(a=1,s=2)", std::abs(sgt1_diameter(1, 2, 2) - 3 * std::sqrt(3.0) / 8), 1e-10);
    c.bound("delta_2(s=1)", std::abs(s1_diameter(1, 2) - 1.0), 1e-10);
    c.bound("delta_3(s=1)", std::abs(s1_diameter(1, 3) - std::sqrt(3.0) / 2), 1e-10);
    c.bound("circle delta_2(b=1/2)", std::abs(circle_diameter(0.5, 2) - 8.0 / 3.0), 1e-10);
    c.bound("cap at s=1", std::abs(capacity_real(1.0) - 0.5), 1e-10);
  });

  criterion(7, "measure suite", [](Criterion& c) {
    std::vector<MeasureSpec> ms{MeasureSpec::real_s(1.5), MeasureSpec::real_s(2.0), MeasureSpec::real_s(5.0),
                                MeasureSpec::arctan()};
    for (double b : {0.0, 0.5, 2.0, -0.5}) ms.push_back(MeasureSpec::circle_poisson(b));
    for (double r : {1.0, std::sqrt(3.0)}) {
      ms.push_back(MeasureSpec::harmonic_inf(r));
      ms.push_back(MeasureSpec::harmonic_i(r));
    }
    double mass = 0.0;
    for (const auto& m : ms) mass = std::max(mass, std::abs(total_mass(m) - 1.0));
    double endpoint = 0.0;
    for (double s : {1.5, 2.0, 5.0}) {
      const double R = support_radius(s);
      endpoint = std::max({endpoint, density(MeasureSpec::real_s(s), R), density(MeasureSpec::real_s(s), -R)});
    }
    const double r = std::sqrt(3.0);
    double combo = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double x = -r + 2 * r * k / 101.0;
      combo = std::max(combo, std::abs(2 * density(MeasureSpec::harmonic_i(r), x) - density(MeasureSpec::harmonic_inf(r), x) -
                                       density(MeasureSpec::real_s(2), x)));
    }
    double v = 0.0;
    for (double s : {1.5, 2.0, 5.0}) {
      const double expansion = -0.5 * (2 * s - 1) * (2 * s - 1) * std::log(2 * s - 1) + (s - 1) * (s - 1) * std::log(s - 1) +
                               s * s * std::log(s) + (2 * s * s - 2 * s + 1) * std::numbers::ln2;
      v = std::max(v, std::abs(-log_capacity_real(s) - expansion));
    }
    c.bound("mass error", mass, 1e-8);
    c.bound("endpoint density", endpoint, 0.0);
    c.bound("harmonic combination", combo, 1e-10);
    c.bound("V_w expansion", v, 1e-12);
  });

  criterion(8, "Frostman check at s=2", [](Criterion& c) {
    const EquilibriumReport rep = frostman_check(2.0, linspace(-3.0, 3.0, 201));
    c.require("all quadratures converged", rep.all_ok());
    c.bound("violation", rep.frostman_max_violation, 1e-6);
    c.bound("on-support deviation", rep.frostman_max_onsupport_deviation, 1e-6);
    c.bound("|F_w - 0.9547713|", std::abs(rep.modified_robin - 0.9547713), 5e-8);
    c.bound("F_w vs quadrature oracle", std::abs(rep.modified_robin - 0.95477125244221922768), 1e-12);
  });

  criterion(9, "convergence", [](Criterion& c) {
    bool decreasing = true;
    for (int n = 3; n <= 50; ++n) decreasing = decreasing && sgt1_diameter(1, 2, n) < sgt1_diameter(1, 2, n - 1);
    c.require("delta_n strictly decreasing for n=2..50", decreasing);
    const double cap = capacity_real(2.0);
    c.require("|delta_50 - cap| < |delta_10 - cap|",
              std::abs(sgt1_diameter(1, 2, 50) - cap) < std::abs(sgt1_diameter(1, 2, 10) - cap));
    const auto mu = MeasureSpec::real_s(2.0);
    const double k10 = ks_distance(pseudo_jacobi_roots(1, 2, 10), mu), k50 = ks_distance(pseudo_jacobi_roots(1, 2, 50), mu);
    c.require("KS line n=50 < n=10", k50 < k10);
    const auto poisson = MeasureSpec::circle_poisson(0.5);
    const double c10 = ks_distance(circle_points(0.5, 10, 0.0).angles, poisson);
    const double c50 = ks_distance(circle_points(0.5, 50, 0.0).angles, poisson);
    c.require("KS circle n=50 < n=10", c50 < c10);
    bool circle_decreasing = true;
    for (int n = 3; n <= 50; ++n) circle_decreasing = circle_decreasing && circle_diameter(0.5, n) < circle_diameter(0.5, n - 1);
    c.require("circle delta_n strictly decreasing", circle_decreasing);
  });

  criterion(10, "sine product bound", [](Criterion& c) {
    std::mt19937_64 rng(20240610);
    std::uniform_real_distribution<double> y(-pi / 2, pi / 2);
    double ratio = 0.0, attained = 0.0;
    for (int n = 2; n <= 6; ++n) {
      const double cap = sine_product_bound(n);
      std::vector<double> ys(static_cast<std::size_t>(n));
      for (int trial = 0; trial < 1000; ++trial) {
        for (auto& v : ys) v = y(rng);
        ratio = std::max(ratio, sine_product(ys) / cap);
      }
      for (int k = 0; k < n; ++k) ys[static_cast<std::size_t>(k)] = -pi / 2 + pi * (k + 0.5) / n;
      attained = std::max(attained, std::abs(sine_product(ys) / cap - 1.0));
    }
    c.bound("excess over bound", std::max(0.0, ratio - 1.0), 0.0);
    c.bound("progression gap to bound", attained, 1e-12);
  });

  criterion(11, "CLI contract", [](Criterion& c) {
    auto near7 = [](const std::vector<double>& v, std::vector<double> want) {
      if (v.size() != want.size()) return false;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!(std::abs(v[k] - want[k]) <= 5e-8)) return false;
      return true;
    };
    Outcome o = run_cli("real --a 1 --s 2 --n 2 --method closed");
    c.require("real s=2 n=2", o.code == 0 && near7(json_numbers(o.out, "points"), {-0.5773503, 0.5773503}) &&
                                  near7(json_numbers(o.out, "diameter"), {0.6495191}));
    o = run_cli("real --a 1 --s 1 --n 2 --method closed");
    c.require("real s=1 n=2", o.code == 0 && near7(json_numbers(o.out, "points"), {-1.0, 1.0}) &&
                                  near7(json_numbers(o.out, "diameter"), {1.0}));
    c.require("real s=0.5 exit 2", run_cli("real --a 1 --s 0.5 --n 4").code == 2);
    o = run_cli("circle --b 0.5 --n 2");
    c.require("circle b=0.5 n=2", o.code == 0 && near7(json_numbers(o.out, "points"), {0.0, pi}) &&
                                      near7(json_numbers(o.out, "diameter"), {2.6666667}));
    o = run_cli("circle --b 0 --n 5");
    c.require("circle b=0 n=5", o.code == 0 &&
                                    near7(json_numbers(o.out, "points"), {pi / 5, 3 * pi / 5, pi, 7 * pi / 5, 9 * pi / 5}) &&
                                    near7(json_numbers(o.out, "diameter"), {std::pow(5.0, 0.25)}));
    c.require("circle b=1 exit 2", run_cli("circle --b 1 --n 4").code == 2);
    c.require("converge non-increasing exit 2", run_cli("converge --s 2 --n-list 5,3").code == 2);
    c.require("non-convergence exit 3", run_cli("real --s 2 --n 9 --method optimize --max-iters 1 --starts 1").code == 3);
    c.require("verify --suite all exit 0", run_cli("verify --suite all").code == 0);
  });

  return g_failed == 0 ? 0 : 1;
}
