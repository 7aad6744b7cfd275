#pragma once

#include <functional>
#include <numbers>

#include "hypara/kernel.hpp"

namespace hypara {

// Gamma(3/2) / Gamma(1): the constant in |grad H_mu(t)|_1 = J_2 / sqrt(mu t) in 2D.
inline constexpr double kJ2 = 0.5 * 1.7724538509055160273;  // sqrt(pi) / 2

// H_mu(t, x) = (4 pi mu t)^{-1} exp(-|x|^2 / (4 mu t)).
double heat_kernel(double mu, double t, double x, double y);

// grad H_mu(t, x).
Vec2 grad_heat_kernel(double mu, double t, double x, double y);

// J_2 / sqrt(mu t). Throws InvalidParameter for t <= 0 or mu <= 0.
double grad_heat_kernel_l1(double mu, double t);

// Heat flow of amplitude * exp(-|x|^2 / (2 sigma0^2)):
//   amplitude sigma0^2 / s^2 exp(-|x|^2 / (2 s^2)),  s^2 = sigma0^2 + 2 mu t.
double gaussian_heat_solution(double sigma0, double amplitude, double mu, double t, double x,
                              double y);

// Same with a constant linear source w_t - mu Lap w = a w: multiplies by e^{a t}.
double gaussian_reaction_diffusion_solution(double sigma0, double amplitude, double mu, double a,
                                            double t, double x, double y);

using Profile = std::function<double(double, double)>;

// Solution of u_t + div(c u) = B u for constant c and B: u0(x - t c) e^{B t}.
double constant_coefficient_transport(const Profile& u0, Vec2 c, double rate, double t, double x,
                                      double y);

// Exact solution of u_t + div(c u) = b u by integration along characteristics:
//   u(t, x) = u0(X(t0; t, x)) exp(int_{t0}^t (b - div c)(tau, X(tau; t, x)) dtau).
// The flow and the exponent are integrated together with classical RK4.
class CharacteristicsOracle {
 public:
  using VectorFn = std::function<Vec2(double t, double x, double y)>;
  using ScalarFn = std::function<double(double t, double x, double y)>;

  CharacteristicsOracle(VectorFn velocity, ScalarFn divergence, ScalarFn source,
                        int substeps = 1000);

  // X(t_to; t_from, x): the characteristic through x at time t_from, followed to t_to.
  Vec2 flow(double t_from, double x, double y, double t_to) const;

  double solve(const Profile& u0, double t0, double t, double x, double y) const;

 private:
  struct Point {
    double x, y, log_gain;
  };
  Point integrate(double t_from, double x, double y, double t_to) const;

  VectorFn velocity_;
  ScalarFn divergence_;
  ScalarFn source_;
  int substeps_;
};

}  // namespace hypara
