#include "hypara/oracles.hpp"

#include <cmath>

#include "hypara/errors.hpp"

namespace hypara {

double heat_kernel(double mu, double t, double x, double y) {
  const double four_mu_t = 4 * mu * t;
  return std::exp(-(x * x + y * y) / four_mu_t) / (std::numbers::pi * four_mu_t);
}

Vec2 grad_heat_kernel(double mu, double t, double x, double y) {
  const double f = -heat_kernel(mu, t, x, y) / (2 * mu * t);
  return {f * x, f * y};
}

double grad_heat_kernel_l1(double mu, double t) {
  if (!(t > 0) || !(mu > 0)) throw InvalidParameter("heat kernel needs mu > 0 and t > 0");
  return kJ2 / std::sqrt(mu * t);
}

double gaussian_heat_solution(double sigma0, double amplitude, double mu, double t, double x,
                              double y) {
  const double s2 = sigma0 * sigma0 + 2 * mu * t;
  return amplitude * sigma0 * sigma0 / s2 * std::exp(-(x * x + y * y) / (2 * s2));
}

double gaussian_reaction_diffusion_solution(double sigma0, double amplitude, double mu, double a,
                                            double t, double x, double y) {
  return std::exp(a * t) * gaussian_heat_solution(sigma0, amplitude, mu, t, x, y);
}

double constant_coefficient_transport(const Profile& u0, Vec2 c, double rate, double t, double x,
                                      double y) {
  return u0(x - t * c.x, y - t * c.y) * std::exp(rate * t);
}

CharacteristicsOracle::CharacteristicsOracle(VectorFn velocity, ScalarFn divergence,
                                             ScalarFn source, int substeps)
    : velocity_(std::move(velocity)),
      divergence_(std::move(divergence)),
      source_(std::move(source)),
      substeps_(substeps) {
  if (substeps_ < 1) throw InvalidParameter("characteristics need at least one substep");
}

CharacteristicsOracle::Point CharacteristicsOracle::integrate(double t_from, double x, double y,
                                                              double t_to) const {
  // d/dtau (X, L) = (c(tau, X), b(tau, X) - div c(tau, X)); L accumulates the log gain.
  auto rhs = [&](double tau, const Point& p) {
    const Vec2 c = velocity_(tau, p.x, p.y);
    return Point{c.x, c.y, source_(tau, p.x, p.y) - divergence_(tau, p.x, p.y)};
  };
  auto axpy = [](const Point& p, double h, const Point& k) {
    return Point{p.x + h * k.x, p.y + h * k.y, p.log_gain + h * k.log_gain};
  };
  const double h = (t_to - t_from) / substeps_;
  Point p{x, y, 0.0};
  for (int n = 0; n < substeps_; ++n) {
    const double tau = t_from + n * h;
    const Point k1 = rhs(tau, p);
    const Point k2 = rhs(tau + h / 2, axpy(p, h / 2, k1));
    const Point k3 = rhs(tau + h / 2, axpy(p, h / 2, k2));
    const Point k4 = rhs(tau + h, axpy(p, h, k3));
    p.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    p.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    p.log_gain += h / 6 * (k1.log_gain + 2 * k2.log_gain + 2 * k3.log_gain + k4.log_gain);
  }
  return p;
}

Vec2 CharacteristicsOracle::flow(double t_from, double x, double y, double t_to) const {
  const Point p = integrate(t_from, x, y, t_to);
  return {p.x, p.y};
}

double CharacteristicsOracle::solve(const Profile& u0, double t0, double t, double x,
                                    double y) const {
  // Backward from (t, x) to t0; the gain integral runs forward, hence the sign flip.
  const Point p = integrate(t, x, y, t0);
  return u0(p.x, p.y) * std::exp(-p.log_gain);
}

}  // namespace hypara
