#include "hypara/convergence.hpp"

#include <cmath>

#include "hypara/coupling.hpp"
#include "hypara/grid.hpp"
#include "hypara/hyperbolic.hpp"
#include "hypara/oracles.hpp"
#include "hypara/parabolic.hpp"

namespace hypara {

namespace {

void fill_orders(std::vector<ConvergenceRow>& rows) {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    rows[k].order = std::log(rows[k - 1].l1_error / rows[k].l1_error) /
                    std::log(rows[k - 1].h / rows[k].h);
  }
}

}  // namespace

std::vector<ConvergenceRow> parabolic_convergence(std::span<const double> spacings,
                                                  const ParabolicStudy& st) {
  std::vector<ConvergenceRow> rows;
  for (double h : spacings) {
    const double L = st.half_width;
    const GridSpec g = GridSpec::with_spacing(-L, L, -L, L, h);
    auto exact_at = [&](double t) {
      return Field::sample(g, [&](double x, double y) {
        return gaussian_heat_solution(st.sigma0, st.amplitude, st.mu, t, x, y);
      });
    };
    const double dt_max = parabolic_dt(st.mu, g, ParabolicStepConfig{st.safety});
    const long n = static_cast<long>(std::ceil(st.t_end / dt_max));
    const double dt = st.t_end / n;
    Field w = exact_at(0.0);
    for (long k = 1; k <= n; ++k) {
      w = apply_boundary(diffusion_step(w, st.mu, dt), exact_at(k * dt));
    }
    rows.push_back({h, n, l1_norm(w - exact_at(st.t_end)), std::nullopt});
  }
  fill_orders(rows);
  return rows;
}

std::vector<ConvergenceRow> hyperbolic_convergence(std::span<const double> spacings,
                                                   const HyperbolicStudy& st) {
  const Profile u0 = [&](double x, double y) {
    const double q = (std::pow(x - st.center.x, 2) + std::pow(y - st.center.y, 2)) /
                     (st.radius * st.radius);
    return q < 1 ? std::pow(1 - q, 4) : 0.0;
  };
  std::vector<ConvergenceRow> rows;
  for (double h : spacings) {
    const double L = st.half_width;
    const GridSpec g = GridSpec::with_spacing(-L, L, -L, L, h);
    const Field initial = Field::sample(g, u0);
    const double speed = std::hypot(st.velocity.x, st.velocity.y);
    const VelocityField c{Field(g, st.velocity.x), Field(g, st.velocity.y), speed};
    const double dt_max = cfl_dt(c, g, HyperbolicStepConfig{st.cfl_number});
    const long n = static_cast<long>(std::ceil(st.t_end / dt_max));
    const double dt = st.t_end / n;
    const Field no_prey(g);
    Field u = initial;
    for (long k = 0; k < n; ++k) {
      u = transport_step(u, c, dt, k % 2 == 0);
      u = source_rk2(u, no_prey, 0.0, -st.rate, dt);
      u = apply_boundary(u, initial);
    }
    const Field exact = Field::sample(g, [&](double x, double y) {
      return constant_coefficient_transport(u0, st.velocity, st.rate, st.t_end, x, y);
    });
    rows.push_back({h, n, l1_norm(u - exact), std::nullopt});
  }
  fill_orders(rows);
  return rows;
}

}  // namespace hypara
