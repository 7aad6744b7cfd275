#pragma once

#include "hypara/grid.hpp"

namespace hypara {

struct ParabolicStepConfig {
  double safety = 0.9;

  void validate() const;
};

// safety / (2 mu (1/dx^2 + 1/dy^2)).
double parabolic_dt(double mu, const GridSpec& g, const ParabolicStepConfig& cfg);

// Forward Euler with the 5-point Laplacian on the interior; the outer ring is copied.
// Throws StepRejected above the explicit stability limit (safety 1).
Field diffusion_step(const Field& w, double mu, double dt);

// Forward Euler for w_t = (gamma - delta u) w: w' = w (1 + dt (gamma - delta u)).
Field source_euler(const Field& w, const Field& u, double gamma, double delta, double dt);

}  // namespace hypara
