#pragma once

#include <optional>
#include <vector>

#include "hypara/coupling.hpp"
#include "hypara/grid.hpp"

namespace hypara {

struct GrowthBounds {
  double l1_u = 0;
  double linf_u = 0;
  double l1_w = 0;
  double linf_w = 0;
};

// A-priori growth estimates for (u, w)(t), driven only by the initial data and rates:
//   |u|_1   <= |u0|_1   exp(alpha (e^{gamma t} - 1)/gamma |w0|_inf)
//   |u|_inf <= |u0|_inf exp((alpha + K)(e^{gamma t} - 1)/gamma |w0|_inf)
//   |w|_1   <= |w0|_1 e^{gamma t},  |w|_inf <= |w0|_inf e^{gamma t}
// with (e^{gamma t} - 1)/gamma read as t for gamma = 0.
GrowthBounds growth_bounds(const ModelParams& p, double K, const Field& u0, const Field& w0,
                           double t);

// rho0 + K t e^{gamma t} |w0|_1.
double support_bound(double rho0, double K, double gamma, double l1_w0, double t);

struct DiagnosticsRecord {
  double t = 0;
  double l1_u = 0, linf_u = 0, l1_w = 0, linf_w = 0;
  double tv_u = 0;
  double support_u = 0;
  GrowthBounds bounds;
  double bound_support = 0;
  bool pass_l1_u = true, pass_linf_u = true, pass_l1_w = true, pass_linf_w = true;
  bool pass_support = true;

  bool passed() const {
    return pass_l1_u && pass_linf_u && pass_l1_w && pass_linf_w && pass_support;
  }
};

using DiagnosticsSeries = std::vector<DiagnosticsRecord>;

inline constexpr double kDefaultAuditTolerance = 0.10;

// Records norms of each observed state next to the growth and support bounds.
// Norm checks pass while norm <= bound (1 + tolerance); the support check allows
// one kernel radius ell of discrete slack on top of the continuum bound.
class BoundAuditor {
 public:
  BoundAuditor(const ModelParams& p, double K, const Field& u0, const Field& w0,
               double tolerance = kDefaultAuditTolerance);

  const DiagnosticsRecord& observe(const SimState& s);

  const DiagnosticsSeries& series() const { return series_; }
  bool all_passed() const;
  double rho0() const { return rho0_; }

 private:
  ModelParams params_;
  double K_;
  Field u0_, w0_;
  double tolerance_;
  double rho0_;
  double l1_w0_;
  DiagnosticsSeries series_;
};

struct MassSample {
  double t = 0;
  double mass_u = 0;
  double mass_w = 0;
};

std::vector<MassSample> mass_series(const DiagnosticsSeries& d);

struct Peak {
  double x = 0, y = 0, height = 0;
};

struct PeakSet {
  std::vector<Peak> peaks;
  // Mean over peaks of the distance to the nearest other peak; absent below two peaks.
  std::optional<double> mean_spacing;
};

inline constexpr double kDefaultPeakThreshold = 0.25;

// Interior cells strictly above their 8 neighbors and at least rel_threshold * max |u|.
PeakSet detect_peaks(const Field& u, double rel_threshold = kDefaultPeakThreshold);

}  // namespace hypara
