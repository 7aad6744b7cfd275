#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "hypara/cli.hpp"
#include "hypara/config.hpp"
#include "hypara/errors.hpp"
#include "hypara/expression.hpp"
#include "hypara/io.hpp"

using namespace hypara;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "hypara_unit";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  if (out_text != nullptr) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("snapshot header") {
  CHECK(snapshot_header(GridSpec(-1, 1, -2, 2, 400, 800)) == "HPSNAP1 400 800 -1 1 -2 2");
  CHECK(snapshot_header(GridSpec(0, 0.1, -0.5, 0.25, 3, 7)) == "HPSNAP1 3 7 0 0.1 -0.5 0.25");
}

TEST_CASE("snapshot round trip is bit exact") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> n(3, 40);
  std::uniform_real_distribution<double> v(-1e3, 1e3);
  for (int k = 0; k < 20; ++k) {
    GridSpec g(v(rng) * 1e-3, 2 + v(rng) * 1e-3, -1.0 / 3, 0.7, n(rng), n(rng));
    Field f(g);
    for (double& x : f.values()) x = v(rng) * std::pow(10.0, n(rng) - 20);
    f.values()[0] = -0.0;
    const fs::path p = scratch("rt.snap");
    write_snapshot(f, p);
    Field back = read_snapshot(p, g);
    CHECK(back == f);
    CHECK(std::signbit(back.values()[0]));
  }
}

TEST_CASE("snapshot reader rejects bad files") {
  GridSpec g(0, 1, 0, 1, 4, 5);
  Field f(g, 1.5);
  const fs::path good = scratch("good.snap");
  write_snapshot(f, good);
  const std::string bytes = slurp(good);
  CHECK(bytes.size() == snapshot_header(g).size() + 1 + 20 * sizeof(double));

  const fs::path bad = scratch("bad.snap");
  spit(bad, "");
  CHECK_THROWS_AS(read_snapshot(bad), FormatError);
  spit(bad, bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_snapshot(bad), FormatError);
  spit(bad, bytes + "x");
  CHECK_THROWS_AS(read_snapshot(bad), FormatError);
  spit(bad, "HPSNAP2" + bytes.substr(7));
  CHECK_THROWS_AS(read_snapshot(bad), FormatError);
  spit(bad, "HPSNAP1 4 five 0 1 0 1\n");
  CHECK_THROWS_AS(read_snapshot(bad), FormatError);
  CHECK_THROWS_AS(read_snapshot(good, GridSpec(0, 1, 0, 1, 5, 4)), FormatError);
  CHECK_THROWS_AS(read_snapshot(scratch("missing.snap")), IoError);
}

TEST_CASE("series round trip") {
  const fs::path p = scratch("series.csv");
  write_series({}, p);
  CHECK(slurp(p) == std::string(kSeriesHeader) + "\n");
  CHECK(read_series(p).empty());

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> v(0, 1);
  DiagnosticsSeries d(25);
  for (auto& r : d) {
    r.t = v(rng);
    r.l1_u = v(rng) / 3;
    r.linf_u = v(rng) * 1e300;
    r.l1_w = v(rng) * 1e-300;
    r.linf_w = v(rng);
    r.tv_u = v(rng);
    r.support_u = v(rng);
    r.bounds = {v(rng), v(rng), v(rng), v(rng)};
    r.bound_support = v(rng);
    r.pass_l1_u = v(rng) < 0.5;
    r.pass_support = v(rng) < 0.5;
  }
  write_series(d, p);
  DiagnosticsSeries back = read_series(p);
  REQUIRE(back.size() == d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    CHECK(back[k].t == d[k].t);
    CHECK(back[k].l1_u == d[k].l1_u);
    CHECK(back[k].linf_u == d[k].linf_u);
    CHECK(back[k].l1_w == d[k].l1_w);
    CHECK(back[k].bounds.linf_w == d[k].bounds.linf_w);
    CHECK(back[k].bound_support == d[k].bound_support);
    CHECK(back[k].pass_l1_u == d[k].pass_l1_u);
    CHECK(back[k].pass_support == d[k].pass_support);
  }
  spit(p, "t,l1_u\n1,2\n");
  CHECK_THROWS_AS(read_series(p), FormatError);
}

TEST_CASE("pgm rendering") {
  GridSpec g(0, 1, 0, 1, 3, 3);
  Field f = Field::sample(g, [](double x, double y) { return x + 3 * y; });
  const fs::path p = scratch("img.pgm");
  render_pgm(f, 0.0, 4.0, p);
  const std::string bytes = slurp(p);
  const std::string header = "P5\n3 3\n255\n";
  REQUIRE(bytes.size() == header.size() + 9);
  CHECK(bytes.substr(0, header.size()) == header);
  auto px = [&](int col, int row) {
    return static_cast<unsigned char>(bytes[header.size() + row * 3 + col]);
  };
  // Top row is the largest y.
  CHECK(px(0, 2) == static_cast<int>(std::lround(255 * f(0, 0) / 4)));
  CHECK(px(2, 0) == static_cast<int>(std::lround(255 * f(2, 2) / 4)));

  Field ramp = Field::sample(g, [](double x, double) { return 10 * x - 5; });
  render_pgm(ramp, -1, 1, p);
  const std::string r = slurp(p);
  CHECK(static_cast<unsigned char>(r[header.size()]) == 0);
  CHECK(static_cast<unsigned char>(r[header.size() + 2]) == 255);
  CHECK_THROWS_AS(render_pgm(f, 1, 1, p), InvalidParameter);
}

TEST_CASE("expressions") {
  CHECK(Expression::parse("1 + 2 * 3")(0, 0) == 7);
  CHECK(Expression::parse("2^3^2")(0, 0) == 512);
  CHECK(Expression::parse("-2^2")(0, 0) == -4);
  CHECK(Expression::parse("x * y - 1")(2, 3) == 5);
  CHECK(Expression::parse("(x^2 + y^2 < 0.01)")(0.05, 0.05) == 1);
  CHECK(Expression::parse("(x^2 + y^2 < 0.01)")(0.1, 0.05) == 0);
  CHECK(Expression::parse("max(0, x) + min(1, pow(y, 2))")(-3, 0.5) == 0.25);
  CHECK(Expression::parse("cos(pi)")(0, 0) == doctest::Approx(-1));
  CHECK(Expression::parse("exp(log(3)) + sqrt(16) + abs(-1) + floor(2.7)")(0, 0) ==
        doctest::Approx(10));
  CHECK(Expression::parse("1e-3 * 2")(0, 0) == doctest::Approx(0.002));
  CHECK(Expression::parse(" x ").text() == " x ");
  CHECK_THROWS_AS(Expression::parse(""), FormatError);
  CHECK_THROWS_AS(Expression::parse("1 +"), FormatError);
  CHECK_THROWS_AS(Expression::parse("foo(1)"), FormatError);
  CHECK_THROWS_AS(Expression::parse("max(1)"), FormatError);
  CHECK_THROWS_AS(Expression::parse("(1"), FormatError);
  CHECK_THROWS_AS(Expression::parse("z"), FormatError);
}

TEST_CASE("presets") {
  RunConfig pcp = preset_pcp();
  CHECK_NOTHROW(pcp.validate());
  CHECK(pcp.grid.nx() == 100);
  CHECK(pcp.grid.ny() == 200);
  CHECK(pcp.params.ell == 0.15);
  Field u0 = pcp.initial_u();
  CHECK(u0.max() == 4.0);
  CHECK(u0.min() == 0.0);
  CHECK(pcp.params.alpha == 2);
  CHECK(Expression::parse(pcp.u0_expr)(0, -1) == 4);
  CHECK(Expression::parse(pcp.w0_expr)(0, -0.5) == 0);
  CHECK(Expression::parse(pcp.w0_expr)(0.5, 1) == doctest::Approx(1.5 * 1.0));

  RunConfig de = preset_de();
  CHECK_NOTHROW(de.validate());
  CHECK(de.params.delta == 24);
  CHECK(de.initial_w() == Field(de.grid, 0.2));
  CHECK(de.initial_u().max() == 0.25);
  CHECK(Expression::parse(de.u0_expr)(-0.4, 1) == 0.25);
  CHECK(Expression::parse(de.u0_expr)(0.3, -1.2) == 0.2);

  RunConfig fine = preset_de(0.005);
  CHECK(fine.grid.nx() == 400);
  CHECK_THROWS_AS(preset_pcp(0.1).validate(), MeshTooCoarse);
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "preset = pcp\n"
      "dx = 0.04   # coarse\n"
      "t_end = 0.3\n"
      "u0 = 2 * (x^2 + y^2 < 0.09)\n"
      "audit = on\n"
      "seed = 17\n");
  RunConfig c = parse_config(in);
  CHECK(c.grid.nx() == 50);
  CHECK(c.t_end == 0.3);
  CHECK(c.audit);
  CHECK(c.seed == 17);
  CHECK(c.params.alpha == 2);
  CHECK(c.u0_expr == "2 * (x^2 + y^2 < 0.09)");

  std::istringstream round(format_config(c));
  RunConfig d = parse_config(round);
  CHECK(d.grid == c.grid);
  CHECK(d.params.ell == c.params.ell);
  CHECK(d.u0_expr == c.u0_expr);
  CHECK(format_config(d) == format_config(c));

  auto fails = [](const std::string& text) {
    std::istringstream s(text);
    return parse_config(s);
  };
  CHECK_THROWS_AS(fails("bogus = 1\n"), FormatError);
  CHECK_THROWS_AS(fails("mu = 1\nmu = 2\n"), FormatError);
  CHECK_THROWS_AS(fails("mu = fast\n"), FormatError);
  CHECK_THROWS_AS(fails("no equals sign\n"), FormatError);
  CHECK_THROWS_AS(fails("dx = 0.1\nnx = 10\n"), FormatError);
  CHECK_THROWS_AS(fails("preset = xyz\n"), FormatError);
  CHECK_THROWS_AS(fails("audit = maybe\n"), FormatError);
  CHECK_THROWS_AS(load_config(scratch("nope.cfg").string()), IoError);

  RunConfig bad = preset_pcp();
  bad.params.mu = -1;
  CHECK_THROWS_AS(bad.validate(), InvalidParameter);
  bad = preset_pcp();
  bad.u0_expr = "x +";
  CHECK_THROWS_AS(bad.validate(), FormatError);
}

TEST_CASE("command line exit codes") {
  CHECK(cli({}) == kExitInvalid);
  CHECK(cli({"run"}) == kExitInvalid);
  CHECK(cli({"run", "--frobnicate"}) == kExitInvalid);
  CHECK(cli({"run", "--preset", "xyz"}) == kExitInvalid);
  CHECK(cli({"run", "--preset", "pcp", "--config", "a.cfg"}) == kExitInvalid);
  CHECK(cli({"run", "--config", scratch("nope.cfg").string()}) == kExitInvalid);
  CHECK(cli({"run", "--preset", "pcp", "--dx", "0.1"}) == kExitInvalid);
  CHECK(cli({"--help"}) == kExitOk);

  const fs::path dir = scratch("cli_run");
  fs::remove_all(dir);
  std::string text;
  CHECK(cli({"run", "--preset", "pcp", "--dx", "0.04", "--t-end", "0.5", "--out", dir.string(),
             "--snapshots-every", "0.25", "--audit"},
            &text) == kExitOk);
  CHECK(text.find("bounds") != std::string::npos);
  CHECK(fs::exists(dir / "series.csv"));
  CHECK(fs::exists(dir / "config.txt"));
  CHECK(fs::exists(dir / "u_0000.snap"));
  CHECK(fs::exists(dir / "w_0002.pgm"));
  Field u = read_snapshot(dir / "u_0002.snap");
  CHECK(u.grid().nx() == 50);

  CHECK(cli({"peaks", (dir / "u_0002.snap").string()}, &text) == kExitOk);
  CHECK(text.find("mean_spacing") != std::string::npos);
  CHECK(cli({"peaks", (dir / "missing.snap").string()}) == kExitInvalid);

  CHECK(cli({"audit-kernel", "--trials", "5", "--dx", "0.05"}, &text) == kExitOk);
  CHECK(text.find("worst_ratio lipschitz_l1") != std::string::npos);
  CHECK(cli({"audit-kernel", "--ell", "0.05"}) == kExitInvalid);
}
