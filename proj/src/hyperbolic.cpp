#include "hypara/hyperbolic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "hypara/errors.hpp"

namespace hypara {

void HyperbolicStepConfig::validate() const {
  if (!(cfl_number > 0 && cfl_number <= 1)) {
    throw InvalidParameter("cfl_number must lie in (0, 1], got " + std::to_string(cfl_number));
  }
}

double cfl_dt(const VelocityField& c, const GridSpec& g, const HyperbolicStepConfig& cfg) {
  cfg.validate();
  if (!(c.kappa > 0)) throw InvalidParameter("kappa must be positive");
  const double h = std::min(g.dx(), g.dy());
  double vmax = 1e-6 * c.kappa;
  for (double v : c.vx.values()) vmax = std::max(vmax, std::abs(v));
  for (double v : c.vy.values()) vmax = std::max(vmax, std::abs(v));
  return std::min(cfg.cfl_number * h / vmax, cfg.cfl_number * h / c.kappa);
}

Field lax_friedrichs_sweep(const Field& u, const Field& c, Axis axis, double dt) {
  assert(u.grid() == c.grid());
  const GridSpec& g = u.grid();
  const double h = axis == Axis::kX ? g.dx() : g.dy();
  double cmax = 0;
  for (double v : c.values()) cmax = std::max(cmax, std::abs(v));
  if (!(dt > 0) || cmax * dt / h > 1.0 + 1e-12) {
    throw StepRejected("Lax-Friedrichs sweep rejected: Courant number " +
                       std::to_string(cmax * dt / h) + " exceeds 1");
  }
  const double lambda = dt / (2 * h);
  Field out = u;
  const int nx = g.nx(), ny = g.ny();
  if (axis == Axis::kX) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 1; i + 1 < nx; ++i) {
        out(i, j) = 0.5 * (u(i - 1, j) + u(i + 1, j)) -
                    lambda * (c(i + 1, j) * u(i + 1, j) - c(i - 1, j) * u(i - 1, j));
      }
    }
  } else {
    for (int j = 1; j + 1 < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        out(i, j) = 0.5 * (u(i, j - 1) + u(i, j + 1)) -
                    lambda * (c(i, j + 1) * u(i, j + 1) - c(i, j - 1) * u(i, j - 1));
      }
    }
  }
  return out;
}

Field transport_step(const Field& u, const VelocityField& c, double dt, bool x_first) {
  if (x_first) {
    return lax_friedrichs_sweep(lax_friedrichs_sweep(u, c.vx, Axis::kX, dt), c.vy, Axis::kY, dt);
  }
  return lax_friedrichs_sweep(lax_friedrichs_sweep(u, c.vy, Axis::kY, dt), c.vx, Axis::kX, dt);
}

Field source_rk2(const Field& u, const Field& w, double alpha, double beta, double dt) {
  assert(u.grid() == w.grid());
  Field out(u.grid());
  const auto uv = u.values(), wv = w.values();
  auto ov = out.values();
  for (std::size_t k = 0; k < uv.size(); ++k) {
    const double r = alpha * wv[k] - beta;
    const double k1 = r * uv[k];
    const double k2 = r * (uv[k] + dt * k1);
    ov[k] = uv[k] + 0.5 * dt * (k1 + k2);
  }
  return out;
}

}  // namespace hypara
