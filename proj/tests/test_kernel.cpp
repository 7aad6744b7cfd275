#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "hypara/errors.hpp"
#include "hypara/kernel.hpp"

using namespace hypara;

namespace {

constexpr double kPi = std::numbers::pi;

// Midpoint rule on a Cartesian n x n grid over [-ell, ell]^2.
double planar_integral(const std::function<double(double, double)>& f, double ell, int n) {
  const double h = 2 * ell / n;
  double sum = 0;
  for (int j = 0; j < n; ++j) {
    const double y = -ell + (j + 0.5) * h;
    for (int i = 0; i < n; ++i) sum += f(-ell + (i + 0.5) * h, y);
  }
  return sum * h * h;
}

// Fourth-order central difference of f along (ex, ey) at (x, y).
double diff(const std::function<double(double, double)>& f, double x, double y, double ex,
            double ey) {
  return (-f(x + 2 * ex, y + 2 * ey) + 8 * f(x + ex, y + ey) - 8 * f(x - ex, y - ey) +
          f(x - 2 * ex, y - 2 * ey)) /
         (12 * std::hypot(ex, ey));
}

}  // namespace

TEST_CASE("mollifier normalization") {
  CHECK(build_mollifier(1.0).eta_hat() == doctest::Approx(4.0 / kPi));
  CHECK(build_mollifier(0.15).eta_hat() == doctest::Approx(4.0 / (kPi * std::pow(0.15, 8))));
  for (double ell : {0.1, 0.25, 1.0, 3.0}) {
    Mollifier m = build_mollifier(ell);
    double mass = planar_integral([&](double x, double y) { return m.value(x, y); }, ell, 800);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("mollifier pointwise values") {
  Mollifier m = build_mollifier(0.5);
  CHECK(m.value(0.5, 0) == 0.0);
  CHECK(m.value(0.3, 0.4) == 0.0);
  CHECK(m.value(2, 2) == 0.0);
  CHECK(m.gradient(0, 0).x == 0.0);
  CHECK(m.gradient(0, 0).y == 0.0);
  CHECK(m.value(0, 0) == doctest::Approx(m.eta_hat() * std::pow(0.25, 3)));
  // eta_ell(x) = ell^-2 eta_1(x / ell); ell = 2 scales the peak by 1/4 and eta_hat by 2^-8.
  CHECK(build_mollifier(2.0).eta_hat() == doctest::Approx(build_mollifier(1.0).eta_hat() / 256));
  CHECK(build_mollifier(2.0).value(0.6, 0.8) ==
        doctest::Approx(0.25 * build_mollifier(1.0).value(0.3, 0.4)));
  CHECK(m.laplacian(0.1, 0.2) ==
        doctest::Approx(m.hessian(0.1, 0.2).xx + m.hessian(0.1, 0.2).yy));
}

TEST_CASE("analytic derivatives agree with central differences") {
  Mollifier m = build_mollifier(0.7);
  auto value = [&](double x, double y) { return m.value(x, y); };
  auto gx = [&](double x, double y) { return m.gradient(x, y).x; };
  auto gy = [&](double x, double y) { return m.gradient(x, y).y; };
  auto hxx = [&](double x, double y) { return m.hessian(x, y).xx; };
  auto hxy = [&](double x, double y) { return m.hessian(x, y).xy; };
  auto hyy = [&](double x, double y) { return m.hessian(x, y).yy; };
  auto lap = [&](double x, double y) { return m.laplacian(x, y); };
  const double pts[][2] = {{0.1, 0.2}, {-0.3, 0.05}, {0.4, -0.4}, {0.0, 0.6}};
  const double e = 1e-3;
  for (auto& p : pts) {
    const double x = p[0], y = p[1];
    Vec2 g = m.gradient(x, y);
    CHECK(g.x == doctest::Approx(diff(value, x, y, e, 0)).epsilon(1e-8));
    CHECK(g.y == doctest::Approx(diff(value, x, y, 0, e)).epsilon(1e-8));
    SymMat2 H = m.hessian(x, y);
    CHECK(H.xx == doctest::Approx(diff(gx, x, y, e, 0)).epsilon(1e-8));
    CHECK(H.xy == doctest::Approx(diff(gx, x, y, 0, e)).epsilon(1e-8));
    CHECK(H.xy == doctest::Approx(diff(gy, x, y, e, 0)).epsilon(1e-8));
    CHECK(H.yy == doctest::Approx(diff(gy, x, y, 0, e)).epsilon(1e-8));
    SymTensor3 T = m.third_derivative(x, y);
    CHECK(T.xxx == doctest::Approx(diff(hxx, x, y, e, 0)).epsilon(1e-8));
    CHECK(T.xxy == doctest::Approx(diff(hxx, x, y, 0, e)).epsilon(1e-8));
    CHECK(T.xxy == doctest::Approx(diff(hxy, x, y, e, 0)).epsilon(1e-8));
    CHECK(T.xyy == doctest::Approx(diff(hxy, x, y, 0, e)).epsilon(1e-8));
    CHECK(T.yyy == doctest::Approx(diff(hyy, x, y, 0, e)).epsilon(1e-8));
    Vec2 gl = m.grad_laplacian(x, y);
    CHECK(gl.x == doctest::Approx(diff(lap, x, y, e, 0)).epsilon(1e-8));
    CHECK(gl.y == doctest::Approx(diff(lap, x, y, 0, e)).epsilon(1e-8));
  }
}

TEST_CASE("central difference error shrinks like e^2") {
  Mollifier m = build_mollifier(1.0);
  auto err = [&](double e) {
    return std::abs(m.gradient(0.3, 0.1).x - (m.value(0.3 + e, 0.1) - m.value(0.3 - e, 0.1)) / (2 * e));
  };
  CHECK(err(1e-2) / err(5e-3) == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("matrix and tensor norms") {
  CHECK(operator_norm({3, 0, -5}) == doctest::Approx(5));
  CHECK(operator_norm({1, 1, 1}) == doctest::Approx(2));
  CHECK(frobenius_norm({1, 0, 0, 0}) == doctest::Approx(1));
  CHECK(frobenius_norm({0, 1, 0, 0}) == doctest::Approx(std::sqrt(3.0)));
  CHECK(frobenius_norm({1, 1, 1, 1}) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("sampled kernel stencils") {
  GridSpec g(-1, 1, -2, 2, 400, 800);
  KernelTable t = sample_kernel(build_mollifier(0.25), g);
  CHECK(t.radius_x() == 50);
  CHECK(t.radius_y() == 50);
  Stencil eta = t.eta(), gx = t.grad_x(), gy = t.grad_y();
  CHECK(std::accumulate(eta.weights.begin(), eta.weights.end(), 0.0) == 1.0);
  double pair_sum = 0;
  for (int b = -50; b <= 50; ++b) {
    for (int a = -50; a <= 50; ++a) {
      CHECK(gx.weight(a, b) == -gx.weight(-a, b));
      CHECK(gx.weight(a, b) == gx.weight(a, -b));
      CHECK(gy.weight(a, b) == -gy.weight(a, -b));
      CHECK(eta.weight(a, b) >= 0.0);
      pair_sum += gx.weight(a, b) + gx.weight(-a, b);
    }
  }
  CHECK(pair_sum == 0.0);
  CHECK(eta.weight(50, 50) == 0.0);
}

TEST_CASE("sampling rejects coarse meshes") {
  GridSpec g(-1, 1, -1, 1, 20, 20);  // h = 0.1
  CHECK_THROWS_AS(sample_kernel(build_mollifier(0.25), g), MeshTooCoarse);
  CHECK_NOTHROW(sample_kernel(build_mollifier(0.3), g));
  CHECK_THROWS_AS(build_mollifier(0.0), InvalidParameter);
  CHECK_THROWS_AS(build_mollifier(-1.0), InvalidParameter);
}

TEST_CASE("kernel norms match closed forms") {
  for (double ell : {0.15, 0.25, 1.0}) {
    Mollifier m = build_mollifier(ell);
    KernelNorms k = compute_kernel_norms(m, 1.0);
    CHECK(k.l1_grad == doctest::Approx(384.0 / (105.0 * ell)).epsilon(1e-8));
    CHECK(k.linf_grad ==
          doctest::Approx(384.0 / (25.0 * std::sqrt(5.0) * kPi) / std::pow(ell, 3)).epsilon(1e-9));
    CHECK(k.linf_hessian == doctest::Approx(6.0 * m.eta_hat() * std::pow(ell, 4)).epsilon(1e-9));
    CHECK(k.grad_eta_W21 == doctest::Approx(k.l1_grad + k.l1_hessian + k.l1_third));
    CHECK(k.grad_eta_W1inf == std::max(k.linf_grad, k.linf_hessian));
  }
}

TEST_CASE("kernel L1 norms match a Cartesian quadrature") {
  const double ell = 0.5;
  Mollifier m = build_mollifier(ell);
  KernelNorms k = compute_kernel_norms(m, 1.0);
  const int n = 1200;
  auto q = [&](auto f) { return planar_integral(f, ell, n); };
  CHECK(k.l1_hessian ==
        doctest::Approx(q([&](double x, double y) { return operator_norm(m.hessian(x, y)); }))
            .epsilon(1e-4));
  CHECK(k.l1_third ==
        doctest::Approx(q([&](double x, double y) { return frobenius_norm(m.third_derivative(x, y)); }))
            .epsilon(1e-4));
  CHECK(k.l1_laplacian ==
        doctest::Approx(q([&](double x, double y) { return std::abs(m.laplacian(x, y)); }))
            .epsilon(1e-4));
  CHECK(k.l1_grad_laplacian == doctest::Approx(q([&](double x, double y) {
                                                 Vec2 v = m.grad_laplacian(x, y);
                                                 return std::hypot(v.x, v.y);
                                               })).epsilon(1e-4));
}

TEST_CASE("kernel norms are converged in the quadrature size") {
  Mollifier m = build_mollifier(0.25);
  KernelNorms a = compute_kernel_norms(m, 1.0, 4096);
  KernelNorms b = compute_kernel_norms(m, 1.0, 8192);
  CHECK(a.l1_hessian == doctest::Approx(b.l1_hessian).epsilon(1e-6));
  CHECK(a.l1_third == doctest::Approx(b.l1_third).epsilon(1e-6));
  CHECK(a.l1_laplacian == doctest::Approx(b.l1_laplacian).epsilon(1e-6));
  CHECK(a.K == doctest::Approx(b.K).epsilon(1e-6));
}

TEST_CASE("velocity constant K") {
  Mollifier m = build_mollifier(0.25);
  KernelNorms k = compute_kernel_norms(m, 1.0);
  bool equals_one = false;
  for (double c : k.candidates) {
    CHECK(c <= k.K);
    equals_one = equals_one || c == k.K;
  }
  CHECK(equals_one);
  CHECK(k.C_of(0) == k.K);
  CHECK(k.C_of(2) == doctest::Approx(k.K * (1 + 2 * k.K)));

  KernelNorms still = compute_kernel_norms(m, 0.0);
  CHECK(still.candidates[0] == 0.0);
  CHECK(still.candidates[1] == 0.0);
  CHECK(still.K == doctest::Approx(std::max(3 * still.grad_eta_W1inf,
                                            48.0 / (25.0 * std::sqrt(5.0)) * still.grad_eta_W21)));
  CHECK_THROWS_AS(compute_kernel_norms(m, -1.0), InvalidParameter);
  CHECK_THROWS_AS(compute_kernel_norms(m, 1.0, 10), InvalidParameter);
}
