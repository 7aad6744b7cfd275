#pragma once

#include <functional>
#include <limits>
#include <span>

#include "hypara/grid.hpp"
#include "hypara/hyperbolic.hpp"
#include "hypara/kernel.hpp"
#include "hypara/parabolic.hpp"

namespace hypara {

// Rates of the predator-prey system
//   u_t + div(u v(w)) = (alpha w - beta) u,   w_t - mu Lap w = (gamma - delta u) w,
// with v(w) = kappa grad(w * eta) / sqrt(1 + |grad(w * eta)|^2) and eta supported in B(0, ell).
struct ModelParams {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
  double delta = 0;
  double mu = 1;
  double kappa = 1;
  double ell = 0.25;

  void validate() const;
};

struct SimState {
  double t = 0;
  Field u;
  Field w;
  Field u0;  // initial data, kept for the boundary policy and the audits
  Field w0;
  long step_index = 0;

  static SimState initial(Field u0, Field w0, double t0 = 0);
};

struct StepInfo {
  double dt_hyperbolic = 0;
  double dt_parabolic = 0;  // the bound from parabolic_dt
  int substeps = 0;
  bool x_first = true;
};

// Overwrites the outer ring of cells of f with the values of f0.
Field apply_boundary(const Field& f, const Field& f0);

// True when the outer ring of f equals that of f0 bit for bit.
bool boundary_matches(const Field& f, const Field& f0);

// One splitting step:
//  1. c = v(w) from the start-of-step prey, frozen initial prey outside the domain;
//  2. dt = min(cfl_dt, dt_limit);
//  3. u <- source_rk2(LF sweeps, x-first on even steps), with w frozen;
//  4. w <- ceil(dt / dt_P) equal substeps of diffusion then source_euler, with the new u frozen;
//  5. boundary rings pinned to the initial data; t += dt.
// Throws Diverged if a non-finite value appears.
SimState step(const SimState& s, const ModelParams& p, const KernelTable& table,
              const HyperbolicStepConfig& hcfg, const ParabolicStepConfig& pcfg,
              double dt_limit = std::numeric_limits<double>::infinity(),
              StepInfo* info = nullptr);

using Observer = std::function<void(const SimState&)>;

struct RunOptions {
  HyperbolicStepConfig hyperbolic;
  ParabolicStepConfig parabolic;
  // Observers fire at the start, whenever t passes a multiple of this interval, and
  // at the end. Zero means after every step.
  double observe_interval = 0;
  // Per-step hard checks: u, w >= 0 and boundary rings equal to the initial data.
  bool audit = false;
};

struct RunResult {
  SimState state;
  long steps = 0;
};

// Steps until t_end; the last step is shortened to land on t_end exactly.
RunResult run(SimState s0, const ModelParams& p, const KernelTable& table, double t_end,
              const RunOptions& options, std::span<const Observer> observers = {});

}  // namespace hypara
