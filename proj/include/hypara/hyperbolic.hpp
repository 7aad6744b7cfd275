#pragma once

#include "hypara/grid.hpp"
#include "hypara/velocity.hpp"

namespace hypara {

struct HyperbolicStepConfig {
  double cfl_number = 0.45;

  void validate() const;
};

enum class Axis { kX, kY };

// cfl * min(dx, dy) / max(max |vx|, max |vy|, 1e-6 kappa), never above cfl * min(dx, dy) / kappa.
double cfl_dt(const VelocityField& c, const GridSpec& g, const HyperbolicStepConfig& cfg);

// One Lax-Friedrichs sweep of u_t + (c u)_axis = 0 over the interior cells:
//   u'_j = (u_{j-1} + u_{j+1}) / 2 - dt / (2 h) (c_{j+1} u_{j+1} - c_{j-1} u_{j-1}).
// Cells on the two outer lines normal to the axis are copied unchanged.
// Throws StepRejected if max |c| dt / h > 1.
Field lax_friedrichs_sweep(const Field& u, const Field& c_component, Axis axis, double dt);

// Both sweeps, x then y or y then x.
Field transport_step(const Field& u, const VelocityField& c, double dt, bool x_first);

// Heun's method for u_t = (alpha w - beta) u with w frozen over the step.
Field source_rk2(const Field& u, const Field& w, double alpha, double beta, double dt);

}  // namespace hypara
