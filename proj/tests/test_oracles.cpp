#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypara/errors.hpp"
#include "hypara/grid.hpp"
#include "hypara/oracles.hpp"

using namespace hypara;

namespace {

constexpr double kPi = std::numbers::pi;

double gauss(double x, double y) { return std::exp(-(x * x + y * y) / 0.08); }

}  // namespace

TEST_CASE("gaussian heat solution") {
  CHECK(gaussian_heat_solution(0.2, 3.0, 0.5, 0.0, 0.1, -0.2) ==
        doctest::Approx(3.0 * std::exp(-0.05 / 0.08)));
  // s^2 = 0.04 + 2 * 0.5 * 0.05 = 0.09
  CHECK(gaussian_heat_solution(0.2, 1.0, 0.5, 0.05, 0, 0) == doctest::Approx(0.04 / 0.09));
  CHECK(gaussian_reaction_diffusion_solution(0.2, 1.0, 0.5, 2.0, 0.05, 0, 0) ==
        doctest::Approx(std::exp(0.1) * 0.04 / 0.09));

  // Mass 2 pi sigma0^2 A is preserved; the peak agrees with the heat kernel convolution.
  GridSpec g(-3, 3, -3, 3, 600, 600);
  for (double t : {0.0, 0.05, 0.1}) {
    Field f = Field::sample(
        g, [&](double x, double y) { return gaussian_heat_solution(0.2, 1.5, 0.5, t, x, y); });
    CHECK(integral(f) == doctest::Approx(2 * kPi * 0.04 * 1.5).epsilon(1e-8));
  }
  const double t = 0.05;
  double conv = 0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      conv += heat_kernel(0.5, t, g.xc(i), g.yc(j)) * 1.5 *
              std::exp(-(g.xc(i) * g.xc(i) + g.yc(j) * g.yc(j)) / (2 * 0.04));
  conv *= g.cell_area();
  CHECK(conv == doctest::Approx(gaussian_heat_solution(0.2, 1.5, 0.5, t, 0, 0)).epsilon(1e-6));
}

TEST_CASE("heat kernel identities") {
  CHECK(kJ2 == doctest::Approx(std::sqrt(kPi) / 2));
  CHECK(grad_heat_kernel_l1(1.0, 1.0) == doctest::Approx(kJ2));
  CHECK(grad_heat_kernel_l1(0.5, 0.1) == doctest::Approx(kJ2 / std::sqrt(0.05)));
  CHECK(grad_heat_kernel_l1(2.0, 0.25) == grad_heat_kernel_l1(0.25, 2.0));
  CHECK(grad_heat_kernel_l1(1.0, 0.25) / grad_heat_kernel_l1(1.0, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(grad_heat_kernel_l1(1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(grad_heat_kernel_l1(0.0, 1.0), InvalidParameter);

  GridSpec g(-4, 4, -4, 4, 800, 800);
  double mass = 0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) mass += heat_kernel(0.5, 0.2, g.xc(i), g.yc(j));
  CHECK(mass * g.cell_area() == doctest::Approx(1.0).epsilon(1e-6));

  Vec2 gr = grad_heat_kernel(0.5, 0.2, 0.3, -0.1);
  const double e = 1e-5;
  CHECK(gr.x == doctest::Approx((heat_kernel(0.5, 0.2, 0.3 + e, -0.1) -
                                 heat_kernel(0.5, 0.2, 0.3 - e, -0.1)) / (2 * e)).epsilon(1e-6));
  CHECK(gr.y == doctest::Approx((heat_kernel(0.5, 0.2, 0.3, -0.1 + e) -
                                 heat_kernel(0.5, 0.2, 0.3, -0.1 - e)) / (2 * e)).epsilon(1e-6));
}

TEST_CASE("constant coefficient transport") {
  Profile u0 = gauss;
  CHECK(constant_coefficient_transport(u0, {0.5, 0.25}, -0.3, 0.0, 0.1, 0.2) == gauss(0.1, 0.2));
  CHECK(constant_coefficient_transport(u0, {0.5, 0.25}, -0.3, 0.4, 0.2, 0.1) ==
        doctest::Approx(std::exp(-0.12)));
  CHECK(constant_coefficient_transport(u0, {1, 0}, 0.0, 1.0, 1.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("characteristics oracle") {
  SUBCASE("constant velocity agrees with the closed form") {
    CharacteristicsOracle o([](double, double, double) { return Vec2{0.5, 0.25}; },
                            [](double, double, double) { return 0.0; },
                            [](double, double, double) { return -0.3; });
    for (double x : {-0.3, 0.0, 0.4}) {
      CHECK(o.solve(gauss, 0, 0.7, x, 0.1) ==
            doctest::Approx(constant_coefficient_transport(gauss, {0.5, 0.25}, -0.3, 0.7, x, 0.1))
                .epsilon(1e-12));
    }
  }
  SUBCASE("rotation keeps the radius") {
    CharacteristicsOracle o([](double, double x, double y) { return Vec2{-y, x}; },
                            [](double, double, double) { return 0.0; },
                            [](double, double, double) { return 0.0; }, 10000);
    Vec2 p = o.flow(0, 0.6, 0.2, 2 * kPi);
    CHECK(p.x == doctest::Approx(0.6).epsilon(1e-8));
    CHECK(p.y == doctest::Approx(0.2).epsilon(1e-8));
    Vec2 q = o.flow(0, 1.0, 0.0, kPi / 2);
    CHECK(std::hypot(q.x, q.y) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(q.y == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("expanding flow dilutes the density") {
    // c = a x, div c = 2a: u(t, x) = u0(x e^{-a t}) e^{-2 a t}.
    const double a = 0.4;
    CharacteristicsOracle o([=](double, double x, double y) { return Vec2{a * x, a * y}; },
                            [=](double, double, double) { return 2 * a; },
                            [](double, double, double) { return 0.0; });
    const double t = 1.3, x = 0.25, y = -0.15;
    const double s = std::exp(-a * t);
    CHECK(o.solve(gauss, 0, t, x, y) ==
          doctest::Approx(gauss(x * s, y * s) * std::exp(-2 * a * t)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(CharacteristicsOracle([](double, double, double) { return Vec2{}; },
                                        [](double, double, double) { return 0.0; },
                                        [](double, double, double) { return 0.0; }, 0),
                  InvalidParameter);
}
