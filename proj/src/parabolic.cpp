#include "hypara/parabolic.hpp"

#include <cassert>
#include <string>

#include "hypara/errors.hpp"

namespace hypara {

void ParabolicStepConfig::validate() const {
  if (!(safety > 0 && safety <= 1)) {
    throw InvalidParameter("parabolic safety factor must lie in (0, 1], got " +
                           std::to_string(safety));
  }
}

double parabolic_dt(double mu, const GridSpec& g, const ParabolicStepConfig& cfg) {
  cfg.validate();
  if (!(mu > 0)) throw InvalidParameter("diffusivity mu must be positive");
  return cfg.safety / (2 * mu * (1 / (g.dx() * g.dx()) + 1 / (g.dy() * g.dy())));
}

Field diffusion_step(const Field& w, double mu, double dt) {
  const GridSpec& g = w.grid();
  const double rx = mu * dt / (g.dx() * g.dx());
  const double ry = mu * dt / (g.dy() * g.dy());
  if (!(dt > 0) || 2 * (rx + ry) > 1.0 + 1e-12) {
    throw StepRejected("diffusion step rejected: dt " + std::to_string(dt) +
                       " above the explicit stability limit");
  }
  Field out = w;
  for (int j = 1; j + 1 < g.ny(); ++j) {
    for (int i = 1; i + 1 < g.nx(); ++i) {
      const double c = w(i, j);
      // Neighbor pairs are summed first so the update commutes with reflections exactly.
      out(i, j) = c + rx * ((w(i - 1, j) + w(i + 1, j)) - 2 * c) +
                  ry * ((w(i, j - 1) + w(i, j + 1)) - 2 * c);
    }
  }
  return out;
}

Field source_euler(const Field& w, const Field& u, double gamma, double delta, double dt) {
  assert(w.grid() == u.grid());
  Field out(w.grid());
  const auto wv = w.values(), uv = u.values();
  auto ov = out.values();
  for (std::size_t k = 0; k < wv.size(); ++k) ov[k] = wv[k] * (1 + dt * (gamma - delta * uv[k]));
  return out;
}

}  // namespace hypara
