#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "hypara/grid.hpp"
#include "hypara/kernel.hpp"

namespace hypara {

// How a convolution sees samples outside the grid.
class BoundaryExtension {
 public:
  // Zero outside the domain (whole-space data with compact support).
  static BoundaryExtension zero() { return BoundaryExtension(nullptr); }

  // Outside samples are taken from `reference` at the nearest in-domain cell,
  // i.e. the frozen initial datum continued constantly across the boundary.
  // `reference` must outlive the extension.
  static BoundaryExtension frozen(const Field& reference) { return BoundaryExtension(&reference); }

  const Field* reference() const { return reference_; }

 private:
  explicit BoundaryExtension(const Field* ref) : reference_(ref) {}
  const Field* reference_;
};

struct VelocityField {
  Field vx;
  Field vy;
  double kappa = 0;

  double max_speed() const;
};

// (w * stencil) at every cell.
Field convolve(const Field& w, const Stencil& stencil, const BoundaryExtension& boundary);

// kappa grad(w * eta) / sqrt(1 + |grad(w * eta)|^2), with grad(w * eta) = w * grad(eta).
VelocityField nonlocal_velocity(const Field& w, const KernelTable& table, double kappa,
                                const BoundaryExtension& boundary);

// Central-difference derivatives of a velocity field, evaluated where the stencil fits.
// Largest spectral norm of the discrete Jacobian.
double max_jacobian_norm(const VelocityField& v);
// div v on a grid, zero on the outer ring.
Field divergence(const VelocityField& v);
// L1 norm of |grad(div v)|, interior cells two away from the edge.
double l1_grad_divergence(const VelocityField& v);
// sup of |v1 - v2| (Euclidean per cell).
double max_difference(const VelocityField& a, const VelocityField& b);

enum class VInequality : int {
  kSpeedByMass = 0,    // |v(w)|_inf <= K |w|_1
  kJacobianBySup,      // |grad v(w)|_inf <= K |w|_inf
  kLipschitzL1,        // |v(w1) - v(w2)|_inf <= K |w1 - w2|_1
  kGradDivByMass,      // |grad div v(w)|_1 <= C(|w|_1) |w|_1
  kDivLipschitz,       // |div(v(w1) - v(w2))|_1 <= C(|w2|_inf) |w1 - w2|_1
};

inline constexpr std::array<std::string_view, 5> kVInequalityNames = {
    "speed_by_mass", "jacobian_by_sup", "lipschitz_l1", "grad_div_by_mass", "div_lipschitz"};

struct VAuditReport {
  int trials = 0;
  double tolerance = 0.05;
  // Largest lhs / rhs observed per inequality (0 when both sides vanish).
  std::array<double, 5> worst_ratio{};
  double K = 0;

  bool passed() const;
};

// Randomized check of the five VInequality bounds for the discrete
// velocity map. Test fields are nonnegative and supported at least ell + 2 cells
// inside the grid, and convolved with zero extension, so the check concerns the
// whole-space operator only.
VAuditReport audit_v_condition(const KernelTable& table, const KernelNorms& norms, int trials,
                               std::uint64_t rng_seed, double tolerance = 0.05);

}  // namespace hypara
