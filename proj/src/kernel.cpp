#include "hypara/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "hypara/errors.hpp"

namespace hypara {

double operator_norm(const SymMat2& m) {
  const double mean = 0.5 * (m.xx + m.yy);
  const double half_gap = std::hypot(0.5 * (m.xx - m.yy), m.xy);
  return std::max(std::abs(mean + half_gap), std::abs(mean - half_gap));
}

double frobenius_norm(const SymTensor3& t) {
  return std::sqrt(t.xxx * t.xxx + 3 * t.xxy * t.xxy + 3 * t.xyy * t.xyy + t.yyy * t.yyy);
}

Mollifier build_mollifier(double ell) {
  if (!(ell > 0) || !std::isfinite(ell)) {
    throw InvalidParameter("mollifier radius must be positive, got " + std::to_string(ell));
  }
  // int_{B(0,ell)} (ell^2 - r^2)^3 dx = pi ell^8 / 4
  const double ell8 = std::pow(ell, 8);
  return Mollifier(ell, 4.0 / (std::numbers::pi * ell8));
}

// All evaluators use s = ell^2 - r^2 and vanish for r >= ell.

double Mollifier::value(double x, double y) const {
  const double s = ell_ * ell_ - (x * x + y * y);
  if (s <= 0) return 0.0;
  return eta_hat_ * s * s * s;
}

Vec2 Mollifier::gradient(double x, double y) const {
  const double s = ell_ * ell_ - (x * x + y * y);
  if (s <= 0) return {};
  const double f = -6.0 * eta_hat_ * s * s;
  return {f * x, f * y};
}

SymMat2 Mollifier::hessian(double x, double y) const {
  const double s = ell_ * ell_ - (x * x + y * y);
  if (s <= 0) return {};
  const double diag = -6.0 * eta_hat_ * s * s;
  const double outer = 24.0 * eta_hat_ * s;
  return {diag + outer * x * x, outer * x * y, diag + outer * y * y};
}

double Mollifier::laplacian(double x, double y) const {
  const double r2 = x * x + y * y;
  const double s = ell_ * ell_ - r2;
  if (s <= 0) return 0.0;
  return eta_hat_ * s * (-12.0 * s + 24.0 * r2);
}

SymTensor3 Mollifier::third_derivative(double x, double y) const {
  const double s = ell_ * ell_ - (x * x + y * y);
  if (s <= 0) return {};
  // 24 eta_hat s (x_k d_ij + x_j d_ik + x_i d_jk) - 48 eta_hat x_i x_j x_k
  const double a = 24.0 * eta_hat_ * s;
  const double b = 48.0 * eta_hat_;
  return {3 * a * x - b * x * x * x, a * y - b * x * x * y, a * x - b * x * y * y,
          3 * a * y - b * y * y * y};
}

Vec2 Mollifier::grad_laplacian(double x, double y) const {
  const double r2 = x * x + y * y;
  const double s = ell_ * ell_ - r2;
  if (s <= 0) return {};
  const double f = eta_hat_ * (96.0 * s - 48.0 * r2);
  return {f * x, f * y};
}

KernelTable sample_kernel(const Mollifier& m, const GridSpec& g) {
  const double h = std::max(g.dx(), g.dy());
  if (m.ell() < 3.0 * h * (1.0 - 1e-12)) {
    throw MeshTooCoarse("kernel radius " + std::to_string(m.ell()) +
                        " is below 3 cells (cell size " + std::to_string(h) + ")");
  }
  KernelTable t;
  t.grid_ = g;
  t.ell_ = m.ell();
  t.rx_ = static_cast<int>(std::floor(m.ell() / g.dx() * (1.0 + 1e-12)));
  t.ry_ = static_cast<int>(std::floor(m.ell() / g.dy() * (1.0 + 1e-12)));
  const int wx = 2 * t.rx_ + 1, wy = 2 * t.ry_ + 1;
  const std::size_t n = static_cast<std::size_t>(wx) * wy;
  t.eta_.assign(n, 0.0);
  t.grad_x_.assign(n, 0.0);
  t.grad_y_.assign(n, 0.0);

  const double area = g.cell_area();
  for (int b = -t.ry_; b <= t.ry_; ++b) {
    const double y = b * g.dy();
    for (int a = -t.rx_; a <= t.rx_; ++a) {
      const double x = a * g.dx();
      const std::size_t k = static_cast<std::size_t>(b + t.ry_) * wx + (a + t.rx_);
      t.eta_[k] = m.value(x, y) * area;
      const Vec2 grad = m.gradient(x, y);
      t.grad_x_[k] = grad.x * area;
      t.grad_y_[k] = grad.y * area;
    }
  }

  const double raw = std::accumulate(t.eta_.begin(), t.eta_.end(), 0.0);
  for (double& v : t.eta_) v /= raw;
  // Push the rounding residue into the center weight so the sum (in storage order) is 1.
  const std::size_t center = static_cast<std::size_t>(t.ry_) * wx + t.rx_;
  for (int pass = 0; pass < 8; ++pass) {
    const double residue = 1.0 - std::accumulate(t.eta_.begin(), t.eta_.end(), 0.0);
    if (residue == 0.0) break;
    t.eta_[center] += residue;
  }
  return t;
}

namespace {

// Composite 4-point Gauss-Legendre rule for int_0^ell f(r) 2 pi r dr. Nodes are interior,
// so derivatives that jump to zero at r = ell are integrated at full order.
double radial_integral(const std::function<double(double)>& f, double ell, int n) {
  static constexpr double kNodes[4] = {-0.8611363115940526, -0.3399810435848563,
                                       0.3399810435848563, 0.8611363115940526};
  static constexpr double kWeights[4] = {0.3478548451374538, 0.6521451548625461,
                                         0.6521451548625461, 0.3478548451374538};
  const double h = ell / n;
  double sum = 0;
  for (int k = 0; k < n; ++k) {
    const double mid = (k + 0.5) * h;
    for (int q = 0; q < 4; ++q) {
      const double r = mid + 0.5 * h * kNodes[q];
      sum += kWeights[q] * f(r) * r;
    }
  }
  return 2.0 * std::numbers::pi * sum * 0.5 * h;
}

// Max of f on [0, ell]: dense scan, then golden-section refinement around the best sample.
double radial_sup(const std::function<double(double)>& f, double ell, int n) {
  const double h = ell / n;
  int best = 0;
  double best_val = f(0.0);
  for (int k = 1; k <= n; ++k) {
    const double v = f(k * h);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  double lo = std::max(0, best - 1) * h;
  double hi = std::min(n, best + 1) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return std::max({best_val, fc, fd, f(lo), f(hi)});
}

}  // namespace

KernelNorms compute_kernel_norms(const Mollifier& m, double kappa, int quad_points) {
  if (quad_points < 64) throw InvalidParameter("kernel quadrature needs at least 64 points");
  if (!(kappa >= 0) || !std::isfinite(kappa)) {
    throw InvalidParameter("kappa must be non-negative");
  }
  const int n = quad_points;
  const double ell = m.ell();

  // Radial symmetry: every pointwise norm depends on r only, evaluate on the x axis.
  auto grad = [&](double r) { return std::abs(m.gradient(r, 0).x); };
  auto hess = [&](double r) { return operator_norm(m.hessian(r, 0)); };
  auto third = [&](double r) { return frobenius_norm(m.third_derivative(r, 0)); };
  auto lap = [&](double r) { return std::abs(m.laplacian(r, 0)); };
  auto grad_lap = [&](double r) { return std::abs(m.grad_laplacian(r, 0).x); };

  KernelNorms k;
  k.l1_grad = radial_integral(grad, ell, n);
  k.l1_hessian = radial_integral(hess, ell, n);
  k.l1_third = radial_integral(third, ell, n);
  k.l1_laplacian = radial_integral(lap, ell, n);
  k.l1_grad_laplacian = radial_integral(grad_lap, ell, n);
  k.linf_grad = radial_sup(grad, ell, n);
  k.linf_hessian = radial_sup(hess, ell, n);
  k.linf_laplacian = radial_sup(lap, ell, n);

  k.grad_eta_W21 = k.l1_grad + k.l1_hessian + k.l1_third;
  k.grad_eta_W1inf = std::max(k.linf_grad, k.linf_hessian);
  k.kappa = kappa;
  k.candidates = {2 * kappa * k.grad_eta_W21, 2 * kappa * k.grad_eta_W1inf,
                  3 * k.grad_eta_W1inf, 48.0 / (25.0 * std::sqrt(5.0)) * k.grad_eta_W21};
  k.K = *std::max_element(k.candidates.begin(), k.candidates.end());
  return k;
}

}  // namespace hypara
