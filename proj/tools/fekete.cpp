// fekete: command-line front end for the weighted Fekete library.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fekete/circle.hpp"
#include "fekete/energy.hpp"
#include "fekete/equilibrium.hpp"
#include "fekete/real_line.hpp"
#include "fekete/verify.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kNotConverged = 3 };

enum class Level { Off, Info, Debug };

Level g_level = Level::Off;

void log(Level lvl, const std::string& msg) {
  if (g_level >= lvl && lvl != Level::Off) std::cerr << "fekete: " << msg << '\n';
}

/// Shortest form that still carries 17 significant digits; always '.' as separator.
std::string num(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string json_num(double v) { return std::isfinite(v) ? num(v) : "null"; }

std::string json_str(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Ordered key/value list whose values are already JSON tokens.
struct Params {
  std::vector<std::pair<std::string, std::string>> items;
  Params& add(std::string k, double v) { return items.emplace_back(std::move(k), json_num(v)), *this; }
  Params& add(std::string k, int v) { return items.emplace_back(std::move(k), std::to_string(v)), *this; }
  Params& add(std::string k, std::string_view v) { return items.emplace_back(std::move(k), json_str(v)), *this; }
  [[nodiscard]] std::string json() const {
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + json_str(items[i].first) + ":" + items[i].second;
    return out + "}";
  }
};

std::string json_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + json_num(v[i]);
  return out + "]";
}

struct Output {
  std::string format = "json";
  std::string path;
};

void emit(const Output& o, const std::string& text) {
  if (o.path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw fekete::InvalidInput("cannot open output file '" + o.path + "'");
  f << text;
  log(Level::Info, "wrote " + o.path);
}

/// A table with numeric columns rendered as {"params", "columns", "rows"} or CSV.
std::string render_table(const Output& o, const Params& p, const std::vector<std::string>& cols,
                         const std::vector<std::vector<double>>& rows) {
  std::string out;
  if (o.format == "csv") {
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_field(cols[i]);
    out += '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + num(r[i]);
      out += '\n';
    }
    return out;
  }
  out = "{\"params\":" + p.json() + ",\"columns\":[";
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + json_str(cols[i]);
  out += "],\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) out += (i ? "," : "") + json_array(rows[i]);
  return out + "]}\n";
}

struct Report {
  Params params;
  std::vector<double> points;
  double log_diameter = 0.0;
  double energy = 0.0;
  double grad_norm = 0.0;
  bool circle = false;
};

std::string render_report(const Output& o, const Report& r) {
  const double diameter = std::exp(r.log_diameter);
  if (o.format == "csv") {
    std::string out = r.circle ? "index,angle,x,y,log_diameter,diameter,energy,grad_norm\n"
                               : "index,point,log_diameter,diameter,energy,grad_norm\n";
    for (std::size_t k = 0; k < r.points.size(); ++k) {
      out += std::to_string(k) + "," + num(r.points[k]);
      if (r.circle) out += "," + num(std::cos(r.points[k])) + "," + num(std::sin(r.points[k]));
      out += "," + num(r.log_diameter) + "," + num(diameter) + "," + num(r.energy) + "," + num(r.grad_norm) + "\n";
    }
    return out;
  }
  std::string out = "{\"params\":" + r.params.json() + ",\"points\":" + json_array(r.points);
  if (r.circle) {
    out += ",\"xy\":[";
    for (std::size_t k = 0; k < r.points.size(); ++k)
      out += (k ? ",[" : "[") + json_num(std::cos(r.points[k])) + "," + json_num(std::sin(r.points[k])) + "]";
    out += "]";
  }
  out += ",\"log_diameter\":" + json_num(r.log_diameter) + ",\"diameter\":" + json_num(diameter) +
         ",\"energy\":" + json_num(r.energy) + ",\"grad_norm\":" + json_num(r.grad_norm) + "}\n";
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void add_output_opts(CLI::App* app, Output& o) {
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app->add_option("--out", o.path, "Write data to this file instead of standard output");
}

// ---------------------------------------------------------------------------

struct RealArgs {
  double a = 1.0;
  double s = 1.0;
  int n = 0;
  std::string method = "closed";
  std::optional<double> gamma;
  std::uint64_t seed = fekete::OptimizerConfig{}.seed;
  int starts = fekete::OptimizerConfig{}.starts;
  int max_iters = fekete::OptimizerConfig{}.max_iters;
  Output out;
};

int cmd_real(const RealArgs& args) {
  const fekete::RealWeight w(args.a, args.s);
  if (args.n < 2) throw fekete::InvalidInput("n must be >= 2");
  if (args.gamma && w.s != 1.0) throw fekete::InvalidInput("--gamma applies only to s = 1");
  if (args.gamma && args.method != "closed") throw fekete::InvalidInput("--gamma applies only to --method closed");

  Report r;
  r.params.add("command", "real").add("a", w.a).add("s", w.s).add("n", args.n).add("method", args.method);
  bool converged = true;
  if (args.method == "closed") {
    if (w.s == 1.0) {
      const double gamma = args.gamma.value_or(fekete::canonical_gamma(args.n));
      const fekete::S1Solution sol = fekete::s1_polynomial(w.a, args.n, gamma);
      r.params.add("gamma", gamma).add("B", sol.B);
      r.points = sol.points;
      r.log_diameter = std::log(fekete::s1_diameter(w.a, args.n));
    } else {
      r.points = fekete::pseudo_jacobi_roots(w.a, w.s, args.n);
      r.log_diameter = fekete::sgt1_log_diameter_product(w.a, w.s, args.n);
    }
    r.energy = -r.log_diameter;
  } else {
    fekete::OptimizerConfig cfg;
    cfg.seed = args.seed;
    cfg.starts = args.starts;
    cfg.max_iters = args.max_iters;
    r.params.add("seed", static_cast<double>(args.seed)).add("starts", args.starts);
    const fekete::FeketeResult fr = fekete::optimize(w, args.n, cfg);
    log(Level::Debug, "optimizer iterations " + std::to_string(fr.iterations));
    r.points = fr.points;
    r.log_diameter = fr.log_diameter;
    r.energy = fr.energy;
    converged = fr.converged;
  }
  r.grad_norm = max_abs(fekete::energy_gradient(r.points, w));
  log(Level::Info, "real n=" + std::to_string(args.n) + " log_diameter=" + num(r.log_diameter) +
                       " grad_norm=" + num(r.grad_norm));
  emit(args.out, render_report(args.out, r));
  if (!converged) {
    std::cerr << "fekete: optimizer did not converge (grad_norm " << num(r.grad_norm) << ")\n";
    return kNotConverged;
  }
  return kOk;
}

struct CircleArgs {
  double b = 0.0;
  int n = 0;
  double alpha = 0.0;
  std::string method = "closed";
  std::uint64_t seed = fekete::OptimizerConfig{}.seed;
  int starts = fekete::OptimizerConfig{}.starts;
  int max_iters = fekete::OptimizerConfig{}.max_iters;
  Output out;
};

int cmd_circle(const CircleArgs& args) {
  const fekete::CircleWeight w(args.b);
  if (args.n < 2) throw fekete::InvalidInput("n must be >= 2");

  Report r;
  r.circle = true;
  r.params.add("command", "circle").add("b", w.b).add("n", args.n).add("method", args.method);
  bool converged = true;
  if (args.method == "closed") {
    r.params.add("alpha", args.alpha);
    r.points = fekete::circle_points(w.b, args.n, args.alpha).angles;
    r.log_diameter = std::log(fekete::circle_diameter(w.b, args.n));
    r.energy = -r.log_diameter;
  } else {
    fekete::OptimizerConfig cfg;
    cfg.seed = args.seed;
    cfg.starts = args.starts;
    cfg.max_iters = args.max_iters;
    r.params.add("seed", static_cast<double>(args.seed)).add("starts", args.starts);
    const fekete::FeketeResult fr = fekete::optimize(w, args.n, cfg);
    log(Level::Debug, "optimizer iterations " + std::to_string(fr.iterations));
    r.points = fr.points;
    r.log_diameter = fr.log_diameter;
    r.energy = fr.energy;
    converged = fr.converged;
  }
  r.grad_norm = max_abs(fekete::energy_gradient(r.points, w));
  log(Level::Info, "circle n=" + std::to_string(args.n) + " log_diameter=" + num(r.log_diameter));
  emit(args.out, render_report(args.out, r));
  if (!converged) {
    std::cerr << "fekete: optimizer did not converge (grad_norm " << num(r.grad_norm) << ")\n";
    return kNotConverged;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v))
    throw fekete::InvalidInput(std::string("malformed ") + what + " '" + std::string(s) + "'");
  return v;
}

Grid parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw fekete::InvalidInput("grid must have the form lo:hi:count");
  Grid g;
  g.lo = parse_double(std::string_view(text).substr(0, c1), "grid bound");
  g.hi = parse_double(std::string_view(text).substr(c1 + 1, c2 - c1 - 1), "grid bound");
  const std::string_view cs = std::string_view(text).substr(c2 + 1);
  auto [p, ec] = std::from_chars(cs.data(), cs.data() + cs.size(), g.count);
  if (ec != std::errc{} || p != cs.data() + cs.size() || g.count < 1)
    throw fekete::InvalidInput("grid count must be a positive integer");
  if (!(g.lo <= g.hi)) throw fekete::InvalidInput("grid requires lo <= hi");
  if (g.count == 1 && g.lo != g.hi) throw fekete::InvalidInput("a one-point grid needs lo == hi");
  return g;
}

struct MeasureArgs {
  std::string family;
  double a = 1.0;
  std::optional<double> s, b, r;
  std::string grid;
  Output out;
};

int cmd_measure(const MeasureArgs& args) {
  auto need = [](const std::optional<double>& v, const char* flag, const std::string& fam) {
    if (!v) throw fekete::InvalidInput("family " + fam + " requires " + flag);
    return *v;
  };
  Params p;
  p.add("command", "measure").add("family", args.family);
  fekete::MeasureSpec m = fekete::MeasureSpec::arctan();
  if (args.family == "real-s") {
    m = fekete::MeasureSpec::real_s(need(args.s, "--s", args.family));
    p.add("s", m.param);
  } else if (args.family == "arctan") {
  } else if (args.family == "circle-poisson") {
    m = fekete::MeasureSpec::circle_poisson(need(args.b, "--b", args.family));
    p.add("b", m.param);
  } else if (args.family == "harmonic-inf") {
    m = fekete::MeasureSpec::harmonic_inf(need(args.r, "--r", args.family));
    p.add("r", m.param);
  } else if (args.family == "harmonic-i") {
    m = fekete::MeasureSpec::harmonic_i(need(args.r, "--r", args.family));
    p.add("r", m.param);
  } else {
    throw fekete::InvalidInput("unknown measure family '" + args.family + "'");
  }
  // Line families live at a = 1; other a enter through x -> x / a.
  const double a = std::abs(args.a);
  if (m.on_circle()) {
    if (args.a != 1.0) throw fekete::InvalidInput("--a does not apply to circle families");
  } else {
    if (!(a > 0.0) || !std::isfinite(a)) throw fekete::InvalidInput("a must be nonzero");
    p.add("a", a);
  }
  const double scale = m.on_circle() ? 1.0 : a;
  const Grid g = parse_grid(args.grid);
  p.add("grid", args.grid);

  const fekete::Interval sup = m.support();
  const double lo = sup.lo * scale, hi = sup.hi * scale;
  std::vector<double> xs;
  if (std::isfinite(lo)) xs.push_back(lo);
  for (int k = 0; k < g.count; ++k) {
    const double x = g.count == 1 ? g.lo : g.lo + (g.hi - g.lo) * k / (g.count - 1);
    if (x > lo && x < hi) xs.push_back(x);
  }
  if (std::isfinite(hi)) xs.push_back(hi);

  std::vector<std::vector<double>> rows;
  rows.reserve(xs.size());
  for (double x : xs)
    rows.push_back({x, fekete::density(m, x / scale) / scale, fekete::cdf(m, x / scale)});
  log(Level::Info, "measure " + args.family + " rows=" + std::to_string(rows.size()));
  emit(args.out, render_table(args.out, p, {"x", "density", "cdf"}, rows));
  return kOk;
}

// ---------------------------------------------------------------------------

struct ConvergeArgs {
  std::optional<double> s, b;
  std::vector<int> n_list;
  Output out;
};

int cmd_converge(const ConvergeArgs& args) {
  if (args.s.has_value() == args.b.has_value()) throw fekete::InvalidInput("converge needs exactly one of --s or --b");
  if (args.n_list.empty()) throw fekete::InvalidInput("--n-list must not be empty");
  for (std::size_t i = 0; i < args.n_list.size(); ++i) {
    if (args.n_list[i] < 2) throw fekete::InvalidInput("--n-list entries must be >= 2");
    if (i > 0 && args.n_list[i] <= args.n_list[i - 1])
      throw fekete::InvalidInput("--n-list must be strictly increasing");
  }

  Params p;
  p.add("command", "converge");
  std::vector<std::vector<double>> rows;
  if (args.s) {
    const fekete::RealWeight w(1.0, *args.s);
    p.add("a", 1.0).add("s", w.s);
    const double cap = fekete::capacity_real(w.s);
    for (int n : args.n_list) {
      double delta = 0.0, ks = 0.0;
      if (w.s == 1.0) {
        delta = fekete::s1_diameter(1.0, n);
        ks = fekete::ks_distance(fekete::s1_points(1.0, n, fekete::canonical_gamma(n)), fekete::MeasureSpec::arctan());
      } else {
        delta = fekete::sgt1_diameter(1.0, w.s, n);
        ks = fekete::ks_distance(fekete::pseudo_jacobi_roots(1.0, w.s, n), fekete::MeasureSpec::real_s(w.s));
      }
      rows.push_back({static_cast<double>(n), delta, cap, delta - cap, ks});
    }
  } else {
    const fekete::CircleWeight w(*args.b);
    p.add("b", w.b);
    const double cap = fekete::capacity_circle(w.b);
    for (int n : args.n_list) {
      const double delta = fekete::circle_diameter(w.b, n);
      const double ks =
          fekete::ks_distance(fekete::circle_points(w.b, n, 0.0).angles, fekete::MeasureSpec::circle_poisson(w.b));
      rows.push_back({static_cast<double>(n), delta, cap, delta - cap, ks});
    }
  }
  emit(args.out, render_table(args.out, p, {"n", "delta", "capacity", "diff", "ks"}, rows));
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string format = "text";
  std::string path;
};

int cmd_verify(const VerifyArgs& args) {
  const auto reports = fekete::verify::run(args.suite);
  bool ok = true;
  std::string out;
  if (args.format == "json") {
    out = "{\"suite\":" + json_str(args.suite) + ",\"checks\":[";
    bool first = true;
    for (const auto& r : reports)
      for (const auto& c : r.checks) {
        out += (first ? "" : ",");
        first = false;
        out += "{\"suite\":" + json_str(r.suite) + ",\"name\":" + json_str(c.name) + ",\"passed\":" +
               (c.passed ? "true" : "false") + ",\"measured\":" + json_num(c.measured) +
               ",\"tolerance\":" + json_num(c.tolerance) + ",\"note\":" + json_str(c.note) + "}";
      }
    for (const auto& r : reports) ok = ok && r.passed();
    out += std::string("],\"passed\":") + (ok ? "true" : "false") + "}\n";
  } else {
    for (const auto& r : reports) {
      for (const auto& c : r.checks) {
        out += std::string(c.passed ? "PASS " : "FAIL ") + r.suite + "/" + c.name + " measured=" + num(c.measured) +
               " tol=" + num(c.tolerance);
        if (!c.note.empty()) out += " (" + c.note + ")";
        out += '\n';
      }
      ok = ok && r.passed();
    }
    out += ok ? "all checks passed\n" : "verification FAILED\n";
  }
  Output o;
  o.path = args.path;
  emit(o, out);
  if (!ok) {
    for (const auto& r : reports)
      for (const auto& c : r.checks)
        if (!c.passed) std::cerr << "fekete: failed check " << r.suite << "/" << c.name << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

Level parse_level() {
  const char* env = std::getenv("FEKETE_LOG");
  if (!env) return Level::Off;
  const std::string_view v(env);
  if (v.empty() || v == "off") return Level::Off;
  if (v == "info") return Level::Info;
  if (v == "debug") return Level::Debug;
  throw fekete::InvalidInput("FEKETE_LOG must be one of off, info, debug");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Fekete points on the real line and the unit circle"};
  app.require_subcommand(1);

  RealArgs real;
  auto* real_cmd = app.add_subcommand("real", "Fekete points for |x - a i|^{-s} on the real line");
  real_cmd->add_option("--a", real.a, "Offset of the attracting charge")->capture_default_str();
  real_cmd->add_option("--s", real.s, "Weight exponent, s >= 1")->required();
  real_cmd->add_option("--n", real.n, "Number of points, n >= 2")->required();
  real_cmd->add_option("--method", real.method)->check(CLI::IsMember({"closed", "optimize"}))->capture_default_str();
  real_cmd->add_option("--gamma", real.gamma, "Phase for s = 1 (default: symmetric solution)");
  real_cmd->add_option("--seed", real.seed, "Optimizer seed")->capture_default_str();
  real_cmd->add_option("--starts", real.starts, "Optimizer multistart count")->capture_default_str();
  real_cmd->add_option("--max-iters", real.max_iters, "Optimizer iteration cap per start")->check(CLI::NonNegativeNumber)->capture_default_str();
  add_output_opts(real_cmd, real.out);

  CircleArgs circle;
  auto* circle_cmd = app.add_subcommand("circle", "Fekete points for 1/|z - b| on the unit circle");
  circle_cmd->add_option("--b", circle.b, "Location of the attracting charge, b != +-1")->required();
  circle_cmd->add_option("--n", circle.n, "Number of points, n >= 2")->required();
  circle_cmd->add_option("--alpha", circle.alpha, "Free phase")->capture_default_str();
  circle_cmd->add_option("--method", circle.method)->check(CLI::IsMember({"closed", "optimize"}))->capture_default_str();
  circle_cmd->add_option("--seed", circle.seed, "Optimizer seed")->capture_default_str();
  circle_cmd->add_option("--starts", circle.starts, "Optimizer multistart count")->capture_default_str();
  circle_cmd->add_option("--max-iters", circle.max_iters, "Optimizer iteration cap per start")->check(CLI::NonNegativeNumber)->capture_default_str();
  add_output_opts(circle_cmd, circle.out);

  MeasureArgs measure;
  auto* measure_cmd = app.add_subcommand("measure", "Sample density and distribution function of a measure");
  measure_cmd->add_option("--family", measure.family, "real-s, arctan, circle-poisson, harmonic-inf, harmonic-i")
      ->required();
  measure_cmd->add_option("--s", measure.s, "Exponent for real-s");
  measure_cmd->add_option("--b", measure.b, "Charge location for circle-poisson");
  measure_cmd->add_option("--r", measure.r, "Interval half-width for the harmonic families");
  measure_cmd->add_option("--a", measure.a, "Offset for line families")->capture_default_str();
  measure_cmd->add_option("--grid", measure.grid, "lo:hi:count")->required();
  add_output_opts(measure_cmd, measure.out);

  ConvergeArgs converge;
  auto* converge_cmd = app.add_subcommand("converge", "Diameters against capacity as n grows (a = 1)");
  auto* conv_s = converge_cmd->add_option("--s", converge.s, "Line exponent");
  auto* conv_b = converge_cmd->add_option("--b", converge.b, "Circle charge location");
  conv_s->excludes(conv_b);
  converge_cmd->add_option("--n-list", converge.n_list, "Comma-separated, strictly increasing")
      ->required()
      ->delimiter(',');
  add_output_opts(converge_cmd, converge.out);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant batteries");
  verify_cmd->add_option("--suite", verify.suite, "all, poly, real, circle, energy, equilibrium")
      ->capture_default_str();
  verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  verify_cmd->add_option("--out", verify.path, "Write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    g_level = parse_level();
    if (real_cmd->parsed()) return cmd_real(real);
    if (circle_cmd->parsed()) return cmd_circle(circle);
    if (measure_cmd->parsed()) return cmd_measure(measure);
    if (converge_cmd->parsed()) return cmd_converge(converge);
    if (verify_cmd->parsed()) return cmd_verify(verify);
  } catch (const fekete::InvalidInput& e) {
    std::cerr << "fekete: invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const fekete::SingularParameter& e) {
    std::cerr << "fekete: invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "fekete: error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
