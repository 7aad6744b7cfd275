#include "hypara/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "hypara/errors.hpp"
#include "hypara/expression.hpp"
#include "hypara/kernel.hpp"

namespace hypara {

namespace {

std::string render(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw FormatError("config key '" + key + "': '" + v + "' is not a number");
  }
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw FormatError("config key '" + key + "': '" + v + "' is not an integer");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw FormatError("config key '" + key + "': '" + v + "' is not on/off");
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  hyperbolic.validate();
  parabolic.validate();
  if (params.ell < 3 * std::max(grid.dx(), grid.dy()) * (1 - 1e-12)) {
    throw MeshTooCoarse("ell = " + render(params.ell) + " is below 3 cells of the mesh");
  }
  if (!(t_end > 0) || !std::isfinite(t_end)) throw InvalidParameter("t_end must be positive");
  if (!(snapshot_interval >= 0)) throw InvalidParameter("snapshot_interval must be >= 0");
  if (!(tol_audit >= 0)) throw InvalidParameter("tol_audit must be >= 0");
  if (!(peak_threshold > 0 && peak_threshold < 1)) {
    throw InvalidParameter("peak_threshold must lie in (0, 1)");
  }
  if (!(u_lo < u_hi) || !(w_lo < w_hi)) throw InvalidParameter("image ranges need lo < hi");
  if (u0_expr.empty() || w0_expr.empty()) throw InvalidParameter("initial data u0, w0 missing");
  Expression::parse(u0_expr);
  Expression::parse(w0_expr);
}

Field RunConfig::initial_u() const { return Field::sample(grid, Expression::parse(u0_expr)); }
Field RunConfig::initial_w() const { return Field::sample(grid, Expression::parse(w0_expr)); }

RunConfig preset_pcp(double spacing) {
  RunConfig c;
  c.scenario = "pcp";
  c.grid = GridSpec::with_spacing(-1, 1, -2, 2, spacing);
  c.params = {.alpha = 2, .beta = 1, .gamma = 1, .delta = 2, .mu = 0.5, .kappa = 1, .ell = 0.15};
  c.u0_expr = "4 * ((2*x)^2 + (1.25*(y + 1))^2 <= 1)";
  c.w0_expr = "1.5 * y * max(0, x^2 + y^2 - 0.25) * (y >= 0)";
  c.t_end = 1.41;
  c.snapshot_interval = 0.235;
  c.u_lo = 0;
  c.u_hi = 15;
  c.w_lo = 0;
  c.w_hi = 14;
  return c;
}

RunConfig preset_de(double spacing) {
  RunConfig c;
  c.scenario = "de";
  c.grid = GridSpec::with_spacing(-1, 1, -2, 2, spacing);
  c.params = {.alpha = 1, .beta = 0.2, .gamma = 0.4, .delta = 24, .mu = 0.5, .kappa = 1,
              .ell = 0.25};
  c.u0_expr = "0.25 * ((x + 0.4)^2 + (y - 1)^2 < 0.01) + 0.2 * ((x - 0.3)^2 + (y + 1.2)^2 < 0.04)";
  c.w0_expr = "0.2";
  c.t_end = 6.0;
  c.snapshot_interval = 0.75;
  c.u_lo = 0;
  c.u_hi = 0.4;
  c.w_lo = 0.2;
  c.w_hi = 0.24;
  return c;
}

RunConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw FormatError("config line " + std::to_string(lineno) + ": empty key");
    if (kv.count(key) != 0) throw FormatError("config key '" + key + "' given twice");
    kv[key] = trim(line.substr(eq + 1));
  }

  RunConfig c;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto preset = take("preset")) {
    if (*preset == "pcp") c = preset_pcp();
    else if (*preset == "de") c = preset_de();
    else throw FormatError("unknown preset '" + *preset + "'");
  }

  double x_min = c.grid.x_min(), x_max = c.grid.x_max();
  double y_min = c.grid.y_min(), y_max = c.grid.y_max();
  if (auto v = take("x_min")) x_min = to_double("x_min", *v);
  if (auto v = take("x_max")) x_max = to_double("x_max", *v);
  if (auto v = take("y_min")) y_min = to_double("y_min", *v);
  if (auto v = take("y_max")) y_max = to_double("y_max", *v);
  const auto dx = take("dx");
  const auto nx = take("nx");
  const auto ny = take("ny");
  if (dx && (nx || ny)) throw FormatError("config gives both dx and nx/ny");
  if (dx) {
    c.grid = GridSpec::with_spacing(x_min, x_max, y_min, y_max, to_double("dx", *dx));
  } else {
    const long gx = nx ? to_long("nx", *nx) : c.grid.nx();
    const long gy = ny ? to_long("ny", *ny) : c.grid.ny();
    c.grid = GridSpec(x_min, x_max, y_min, y_max, static_cast<int>(gx), static_cast<int>(gy));
  }

  const std::pair<const char*, double*> reals[] = {
      {"alpha", &c.params.alpha}, {"beta", &c.params.beta},   {"gamma", &c.params.gamma},
      {"delta", &c.params.delta}, {"mu", &c.params.mu},       {"kappa", &c.params.kappa},
      {"ell", &c.params.ell},     {"t_end", &c.t_end},        {"snapshot_interval", &c.snapshot_interval},
      {"tol_audit", &c.tol_audit}, {"peak_threshold", &c.peak_threshold},
      {"cfl_number", &c.hyperbolic.cfl_number}, {"safety", &c.parabolic.safety},
      {"u_lo", &c.u_lo}, {"u_hi", &c.u_hi}, {"w_lo", &c.w_lo}, {"w_hi", &c.w_hi}};
  for (const auto& [key, slot] : reals) {
    if (auto v = take(key)) *slot = to_double(key, *v);
  }
  if (auto v = take("scenario")) c.scenario = *v;
  if (auto v = take("u0")) c.u0_expr = *v;
  if (auto v = take("w0")) c.w0_expr = *v;
  if (auto v = take("output_dir")) c.output_dir = *v;
  if (auto v = take("audit")) c.audit = to_bool("audit", *v);
  if (auto v = take("seed")) c.seed = static_cast<std::uint64_t>(to_long("seed", *v));

  if (!kv.empty()) throw FormatError("unknown config key '" + kv.begin()->first + "'");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  out << "scenario = " << c.scenario << '\n'
      << "x_min = " << render(c.grid.x_min()) << '\n'
      << "x_max = " << render(c.grid.x_max()) << '\n'
      << "y_min = " << render(c.grid.y_min()) << '\n'
      << "y_max = " << render(c.grid.y_max()) << '\n'
      << "nx = " << c.grid.nx() << '\n'
      << "ny = " << c.grid.ny() << '\n'
      << "alpha = " << render(c.params.alpha) << '\n'
      << "beta = " << render(c.params.beta) << '\n'
      << "gamma = " << render(c.params.gamma) << '\n'
      << "delta = " << render(c.params.delta) << '\n'
      << "mu = " << render(c.params.mu) << '\n'
      << "kappa = " << render(c.params.kappa) << '\n'
      << "ell = " << render(c.params.ell) << '\n'
      << "u0 = " << c.u0_expr << '\n'
      << "w0 = " << c.w0_expr << '\n'
      << "t_end = " << render(c.t_end) << '\n'
      << "snapshot_interval = " << render(c.snapshot_interval) << '\n'
      << "output_dir = " << c.output_dir << '\n'
      << "audit = " << (c.audit ? "on" : "off") << '\n'
      << "seed = " << c.seed << '\n'
      << "tol_audit = " << render(c.tol_audit) << '\n'
      << "peak_threshold = " << render(c.peak_threshold) << '\n'
      << "cfl_number = " << render(c.hyperbolic.cfl_number) << '\n'
      << "safety = " << render(c.parabolic.safety) << '\n'
      << "u_lo = " << render(c.u_lo) << '\n'
      << "u_hi = " << render(c.u_hi) << '\n'
      << "w_lo = " << render(c.w_lo) << '\n'
      << "w_hi = " << render(c.w_hi) << '\n';
  return out.str();
}

}  // namespace hypara
