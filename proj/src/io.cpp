#include "hypara/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "hypara/errors.hpp"
#include "hypara/velocity.hpp"

namespace hypara {

namespace fs = std::filesystem;

namespace {

std::string render(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  return bits;
}

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_real(const std::string& s, const std::string& where) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(where + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

std::string snapshot_header(const GridSpec& g) {
  return "HPSNAP1 " + std::to_string(g.nx()) + " " + std::to_string(g.ny()) + " " +
         render(g.x_min()) + " " + render(g.x_max()) + " " + render(g.y_min()) + " " +
         render(g.y_max());
}

void write_snapshot(const Field& f, const fs::path& path) {
  auto out = open_for_write(path);
  out << snapshot_header(f.grid()) << '\n';
  std::vector<std::uint64_t> payload(f.size());
  const auto values = f.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    payload[k] = to_little_endian(std::bit_cast<std::uint64_t>(values[k]));
  }
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(std::uint64_t)));
  finish(out, path);
}

Field read_snapshot(const fs::path& path, const std::optional<GridSpec>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string where = "snapshot '" + path.string() + "'";

  const auto newline = bytes.find('\n');
  if (newline == std::string::npos) throw FormatError(where + ": malformed header");
  std::istringstream header(bytes.substr(0, newline));
  std::string magic, nx_s, ny_s, bounds[4], extra;
  header >> magic >> nx_s >> ny_s >> bounds[0] >> bounds[1] >> bounds[2] >> bounds[3];
  if (magic != "HPSNAP1" || !header || (header >> extra)) {
    throw FormatError(where + ": malformed header");
  }
  long nx = 0, ny = 0;
  for (auto [text, slot] : {std::pair{&nx_s, &nx}, std::pair{&ny_s, &ny}}) {
    const auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), *slot);
    if (ec != std::errc() || ptr != text->data() + text->size() || *slot < 3 || *slot > 1 << 20) {
      throw FormatError(where + ": malformed header");
    }
  }
  GridSpec g;
  try {
    g = GridSpec(parse_real(bounds[0], where), parse_real(bounds[1], where),
                 parse_real(bounds[2], where), parse_real(bounds[3], where),
                 static_cast<int>(nx), static_cast<int>(ny));
  } catch (const InvalidParameter& e) {
    throw FormatError(where + ": malformed header (" + e.what() + ")");
  }
  if (expected && !(*expected == g)) {
    throw FormatError(where + ": grid " + snapshot_header(g) + " does not match expected " +
                      snapshot_header(*expected));
  }
  const std::size_t need = g.size() * sizeof(double);
  const std::size_t have = bytes.size() - newline - 1;
  if (have < need) throw FormatError(where + ": truncated payload");
  if (have > need) throw FormatError(where + ": trailing bytes after payload");

  std::vector<double> values(g.size());
  const char* src = bytes.data() + newline + 1;
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, src + k * sizeof bits, sizeof bits);
    values[k] = std::bit_cast<double>(to_little_endian(bits));
  }
  return Field(g, std::move(values));
}

void write_series(const DiagnosticsSeries& d, const fs::path& path) {
  auto out = open_for_write(path);
  out << kSeriesHeader << '\n';
  for (const auto& r : d) {
    const double reals[] = {r.t,           r.l1_u,          r.linf_u,        r.l1_w,
                            r.linf_w,      r.tv_u,          r.support_u,     r.bounds.l1_u,
                            r.bounds.linf_u, r.bounds.l1_w, r.bounds.linf_w, r.bound_support};
    for (double v : reals) out << render(v) << ',';
    out << int(r.pass_l1_u) << ',' << int(r.pass_linf_u) << ',' << int(r.pass_l1_w) << ','
        << int(r.pass_linf_w) << ',' << int(r.pass_support) << '\n';
  }
  finish(out, path);
}

DiagnosticsSeries read_series(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open series '" + path.string() + "'");
  const std::string where = "series '" + path.string() + "'";
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader) {
    throw FormatError(where + ": missing or unexpected header");
  }
  DiagnosticsSeries d;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 17) throw FormatError(where + ": row with wrong column count");
    DiagnosticsRecord r;
    double* reals[] = {&r.t,           &r.l1_u,          &r.linf_u,        &r.l1_w,
                       &r.linf_w,      &r.tv_u,          &r.support_u,     &r.bounds.l1_u,
                       &r.bounds.linf_u, &r.bounds.l1_w, &r.bounds.linf_w, &r.bound_support};
    for (int k = 0; k < 12; ++k) *reals[k] = parse_real(cells[k], where);
    bool* flags[] = {&r.pass_l1_u, &r.pass_linf_u, &r.pass_l1_w, &r.pass_linf_w, &r.pass_support};
    for (int k = 0; k < 5; ++k) {
      const auto& c = cells[12 + k];
      if (c != "0" && c != "1") throw FormatError(where + ": flag '" + c + "' is not 0/1");
      *flags[k] = c == "1";
    }
    d.push_back(r);
  }
  return d;
}

void render_pgm(const Field& f, double lo, double hi, const fs::path& path) {
  if (!(lo < hi)) throw InvalidParameter("render_pgm needs lo < hi");
  auto out = open_for_write(path);
  out << "P5\n" << f.nx() << ' ' << f.ny() << "\n255\n";
  std::vector<unsigned char> row(f.nx());
  for (int j = f.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < f.nx(); ++i) {
      const double level = std::round(255.0 * (f(i, j) - lo) / (hi - lo));
      row[i] = static_cast<unsigned char>(std::clamp(level, 0.0, 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  finish(out, path);
}

ScenarioResult run_scenario(const RunConfig& cfg) {
  cfg.validate();
  const ModelParams& p = cfg.params;
  const Mollifier eta = build_mollifier(p.ell);
  const KernelTable table = sample_kernel(eta, cfg.grid);

  ScenarioResult result;
  result.norms = compute_kernel_norms(eta, p.kappa);
  SimState s0 = SimState::initial(cfg.initial_u(), cfg.initial_w());
  BoundAuditor auditor(p, result.norms.K, s0.u0, s0.w0, cfg.tol_audit);

  const bool write = !cfg.output_dir.empty();
  const fs::path dir(cfg.output_dir);
  std::ofstream index;
  if (write) {
    fs::create_directories(dir);
    std::ofstream conf = open_for_write(dir / "config.txt");
    conf << format_config(cfg);
    finish(conf, dir / "config.txt");
    index = open_for_write(dir / "snapshots.csv");
    index << "index,t\n";
  }

  long slot = -1;
  auto snapshot = [&](const SimState& s) {
    if (!write) return;
    const bool last = s.t >= cfg.t_end;
    // Interval 0: the initial and final states only.
    const long current = cfg.snapshot_interval > 0
                             ? static_cast<long>(std::floor(s.t / cfg.snapshot_interval + 1e-9))
                             : 0;
    if (current <= slot && !last) return;
    slot = current;
    std::ostringstream stem;
    stem << std::setw(4) << std::setfill('0') << result.snapshots;
    write_snapshot(s.u, dir / ("u_" + stem.str() + ".snap"));
    write_snapshot(s.w, dir / ("w_" + stem.str() + ".snap"));
    render_pgm(s.u, cfg.u_lo, cfg.u_hi, dir / ("u_" + stem.str() + ".pgm"));
    render_pgm(s.w, cfg.w_lo, cfg.w_hi, dir / ("w_" + stem.str() + ".pgm"));
    index << result.snapshots << ',' << render(s.t) << '\n';
    ++result.snapshots;
  };

  const Observer observers[] = {[&](const SimState& s) { auditor.observe(s); }, snapshot};
  RunOptions options;
  options.hyperbolic = cfg.hyperbolic;
  options.parabolic = cfg.parabolic;
  options.audit = cfg.audit;
  RunResult run_result = run(std::move(s0), p, table, cfg.t_end, options, observers);

  result.final_state = std::move(run_result.state);
  result.steps = run_result.steps;
  result.series = auditor.series();
  result.bounds_passed = auditor.all_passed();
  if (write) {
    finish(index, dir / "snapshots.csv");
    write_series(result.series, dir / "series.csv");
  }
  return result;
}

}  // namespace hypara
