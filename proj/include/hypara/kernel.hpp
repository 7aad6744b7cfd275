#pragma once

#include <array>
#include <span>
#include <vector>

#include "hypara/grid.hpp"

namespace hypara {

struct Vec2 {
  double x = 0, y = 0;
};

// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct SymMat2 {
  double xx = 0, xy = 0, yy = 0;
};

// Fully symmetric third-order tensor in 2D, stored by its four distinct entries.
struct SymTensor3 {
  double xxx = 0, xxy = 0, xyy = 0, yyy = 0;
};

// Operator (spectral) norm of a symmetric 2x2 matrix.
double operator_norm(const SymMat2& m);

// Frobenius norm of a symmetric third-order tensor (all eight entries).
double frobenius_norm(const SymTensor3& t);

// Radial bump eta(x) = eta_hat * (ell^2 - |x|^2)^3 on B(0, ell), zero outside,
// normalized to unit mass on R^2.
class Mollifier {
 public:
  double ell() const { return ell_; }
  double eta_hat() const { return eta_hat_; }

  double value(double x, double y) const;
  Vec2 gradient(double x, double y) const;
  SymMat2 hessian(double x, double y) const;
  double laplacian(double x, double y) const;
  SymTensor3 third_derivative(double x, double y) const;
  Vec2 grad_laplacian(double x, double y) const;

 private:
  friend Mollifier build_mollifier(double ell);
  Mollifier(double ell, double eta_hat) : ell_(ell), eta_hat_(eta_hat) {}

  double ell_;
  double eta_hat_;
};

// Throws InvalidParameter for ell <= 0.
Mollifier build_mollifier(double ell);

// Borrowed view of a (2 rx + 1) x (2 ry + 1) stencil; weight(a, b) is the weight at
// cell offset (a, b), a in [-rx, rx], b in [-ry, ry].
struct Stencil {
  int rx = 0;
  int ry = 0;
  std::span<const double> weights;

  int width() const { return 2 * rx + 1; }
  double weight(int a, int b) const { return weights[(b + ry) * width() + (a + rx)]; }
};

// Mollifier stencils sampled on a grid, pre-scaled by the cell area so that
// sum_k w(x - y_k) * weight_k approximates the continuum convolution.
class KernelTable {
 public:
  const GridSpec& grid() const { return grid_; }
  double ell() const { return ell_; }
  int radius_x() const { return rx_; }
  int radius_y() const { return ry_; }

  Stencil eta() const { return {rx_, ry_, eta_}; }
  Stencil grad_x() const { return {rx_, ry_, grad_x_}; }
  Stencil grad_y() const { return {rx_, ry_, grad_y_}; }

 private:
  friend KernelTable sample_kernel(const Mollifier& m, const GridSpec& g);

  GridSpec grid_;
  double ell_ = 0;
  int rx_ = 0, ry_ = 0;
  std::vector<double> eta_, grad_x_, grad_y_;
};

// Throws MeshTooCoarse unless ell >= 3 max(dx, dy).
KernelTable sample_kernel(const Mollifier& m, const GridSpec& g);

struct KernelNorms {
  // Pieces, all from the analytic derivatives of eta. Pointwise norms: Euclidean
  // for vectors, spectral for matrices, Frobenius for the third derivative.
  double l1_grad = 0;
  double l1_hessian = 0;
  double l1_third = 0;
  double l1_laplacian = 0;
  double l1_grad_laplacian = 0;
  double linf_grad = 0;
  double linf_hessian = 0;
  double linf_laplacian = 0;

  double grad_eta_W21 = 0;    // l1_grad + l1_hessian + l1_third
  double grad_eta_W1inf = 0;  // max(linf_grad, linf_hessian)

  double kappa = 0;
  // 2 kappa |grad eta|_W21, 2 kappa |grad eta|_W1inf, 3 |grad eta|_W1inf,
  // 48 / (25 sqrt 5) |grad eta|_W21.
  std::array<double, 4> candidates{};
  double K = 0;

  // C(xi) = K (1 + K xi).
  double C_of(double xi) const { return K * (1.0 + K * xi); }
};

inline constexpr int kDefaultQuadPoints = 4096;

// Radial quadrature of the analytic derivative norms; quad_points >= 64.
KernelNorms compute_kernel_norms(const Mollifier& m, double kappa,
                                 int quad_points = kDefaultQuadPoints);

}  // namespace hypara
