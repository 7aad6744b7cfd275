#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hypara/kernel.hpp"

namespace hypara {

struct ConvergenceRow {
  double h = 0;
  long steps = 0;
  double l1_error = 0;
  // log2-type rate against the previous (coarser) row.
  std::optional<double> order;
};

// Gaussian amplitude * exp(-|x|^2 / (2 sigma0^2)) under pure diffusion on [-L, L]^2,
// advanced by diffusion_step at parabolic_dt. The outer ring carries the exact
// solution so that the error measured is the scheme's own.
struct ParabolicStudy {
  double sigma0 = 0.2;
  double amplitude = 1.0;
  double mu = 0.5;
  double t_end = 0.05;
  double half_width = 1.0;
  double safety = 0.9;
};

// Compact bump (1 - |x - x0|^2 / R^2)^4 transported by a constant velocity with a
// constant rate, u_t + div(c u) = b u, by alternating Lax-Friedrichs sweeps and
// source_rk2 on [-L, L]^2; the outer ring is pinned to the initial datum.
struct HyperbolicStudy {
  Vec2 velocity{0.5, 0.25};
  double rate = -0.3;
  double t_end = 0.4;
  Vec2 center{-0.1, -0.05};
  double radius = 0.6;
  double half_width = 1.0;
  double cfl_number = 0.45;
};

std::vector<ConvergenceRow> parabolic_convergence(std::span<const double> spacings,
                                                  const ParabolicStudy& study = {});

std::vector<ConvergenceRow> hyperbolic_convergence(std::span<const double> spacings,
                                                   const HyperbolicStudy& study = {});

}  // namespace hypara
