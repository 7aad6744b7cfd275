#include "hypara/coupling.hpp"

#include <cmath>
#include <string>

#include "hypara/errors.hpp"
#include "hypara/velocity.hpp"

namespace hypara {

void ModelParams::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0) || !std::isfinite(v)) {
      throw InvalidParameter(std::string(name) + " must be a finite non-negative number");
    }
  };
  nonneg(alpha, "alpha");
  nonneg(beta, "beta");
  nonneg(gamma, "gamma");
  nonneg(delta, "delta");
  if (!(mu > 0) || !std::isfinite(mu)) throw InvalidParameter("mu must be positive");
  if (!(kappa > 0) || !std::isfinite(kappa)) throw InvalidParameter("kappa must be positive");
  if (!(ell > 0) || !std::isfinite(ell)) throw InvalidParameter("ell must be positive");
}

SimState SimState::initial(Field u0, Field w0, double t0) {
  if (!(u0.grid() == w0.grid())) throw InvalidParameter("u0 and w0 live on different grids");
  if (!u0.all_finite() || !w0.all_finite()) throw InvalidParameter("initial data not finite");
  SimState s;
  s.t = t0;
  s.u = u0;
  s.w = w0;
  s.u0 = std::move(u0);
  s.w0 = std::move(w0);
  return s;
}

Field apply_boundary(const Field& f, const Field& f0) {
  if (!(f.grid() == f0.grid())) throw InvalidParameter("boundary reference on a different grid");
  Field out = f;
  const int nx = f.nx(), ny = f.ny();
  for (int i = 0; i < nx; ++i) {
    out(i, 0) = f0(i, 0);
    out(i, ny - 1) = f0(i, ny - 1);
  }
  for (int j = 1; j + 1 < ny; ++j) {
    out(0, j) = f0(0, j);
    out(nx - 1, j) = f0(nx - 1, j);
  }
  return out;
}

bool boundary_matches(const Field& f, const Field& f0) {
  return apply_boundary(f, f0) == f;
}

namespace {

void require_finite(const Field& f, const char* name, long step) {
  if (!f.all_finite()) throw Diverged(name, step);
}

}  // namespace

SimState step(const SimState& s, const ModelParams& p, const KernelTable& table,
              const HyperbolicStepConfig& hcfg, const ParabolicStepConfig& pcfg,
              double dt_limit, StepInfo* info) {
  const long next = s.step_index + 1;
  const VelocityField c =
      nonlocal_velocity(s.w, table, p.kappa, BoundaryExtension::frozen(s.w0));
  const double dt = std::min(cfl_dt(c, s.u.grid(), hcfg), dt_limit);
  if (!(dt > 0)) throw InvalidParameter("non-positive time step");
  const bool x_first = s.step_index % 2 == 0;

  SimState out;
  out.u0 = s.u0;
  out.w0 = s.w0;
  out.step_index = next;

  Field u = transport_step(s.u, c, dt, x_first);
  u = source_rk2(u, s.w, p.alpha, p.beta, dt);
  u = apply_boundary(u, s.u0);
  require_finite(u, "u", next);

  const double dt_p = parabolic_dt(p.mu, s.w.grid(), pcfg);
  const int substeps = static_cast<int>(std::ceil(dt / dt_p));
  const double sub = dt / substeps;
  Field w = s.w;
  for (int k = 0; k < substeps; ++k) {
    w = diffusion_step(w, p.mu, sub);
    w = source_euler(w, u, p.gamma, p.delta, sub);
    w = apply_boundary(w, s.w0);
  }
  require_finite(w, "w", next);

  out.u = std::move(u);
  out.w = std::move(w);
  out.t = s.t + dt;
  if (info != nullptr) *info = {dt, dt_p, substeps, x_first};
  return out;
}

RunResult run(SimState s, const ModelParams& p, const KernelTable& table, double t_end,
              const RunOptions& options, std::span<const Observer> observers) {
  p.validate();
  if (!(t_end > s.t)) throw InvalidParameter("t_end must exceed the initial time");
  if (options.observe_interval < 0) throw InvalidParameter("observe_interval must be >= 0");

  auto notify = [&](const SimState& st) {
    for (const auto& obs : observers) obs(st);
  };
  auto audit = [&](const SimState& st) {
    if (!options.audit) return;
    if (st.u.min() < 0 || st.w.min() < 0) {
      throw AuditFailure("negative density at step " + std::to_string(st.step_index) +
                         ": min u = " + std::to_string(st.u.min()) +
                         ", min w = " + std::to_string(st.w.min()));
    }
    if (!boundary_matches(st.u, st.u0) || !boundary_matches(st.w, st.w0)) {
      throw AuditFailure("boundary ring drifted from the initial datum at step " +
                         std::to_string(st.step_index));
    }
  };

  const double t0 = s.t;
  long observed_slot = 0;
  audit(s);
  notify(s);
  double last_observed = s.t;

  RunResult result;
  while (s.t < t_end) {
    const double remaining = t_end - s.t;
    s = step(s, p, table, options.hyperbolic, options.parabolic, remaining);
    // Land on t_end exactly rather than a rounding hair before it.
    if (t_end - s.t <= 1e-12 * std::max(1.0, std::abs(t_end))) s.t = t_end;
    ++result.steps;
    audit(s);

    bool observe = options.observe_interval == 0 || s.t >= t_end;
    if (!observe) {
      const auto slot = static_cast<long>(std::floor((s.t - t0) / options.observe_interval));
      if (slot > observed_slot) {
        observed_slot = slot;
        observe = true;
      }
    }
    if (observe && s.t > last_observed) {
      notify(s);
      last_observed = s.t;
    }
  }
  result.state = std::move(s);
  return result;
}

}  // namespace hypara
