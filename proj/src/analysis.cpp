#include "hypara/analysis.hpp"

#include <cmath>
#include <limits>

#include "hypara/errors.hpp"

namespace hypara {

namespace {

// (e^{gamma t} - 1) / gamma, continuous at gamma = 0.
double growth_time(double gamma, double t) {
  return gamma == 0 ? t : std::expm1(gamma * t) / gamma;
}

}  // namespace

GrowthBounds growth_bounds(const ModelParams& p, double K, const Field& u0, const Field& w0,
                           double t) {
  if (!(p.gamma >= 0)) throw InvalidParameter("gamma must be non-negative");
  const double tau = growth_time(p.gamma, t);
  const double w0_sup = linf_norm(w0);
  const double e_gamma = std::exp(p.gamma * t);
  GrowthBounds b;
  b.l1_u = l1_norm(u0) * std::exp(p.alpha * tau * w0_sup);
  b.linf_u = linf_norm(u0) * std::exp((p.alpha + K) * tau * w0_sup);
  b.l1_w = l1_norm(w0) * e_gamma;
  b.linf_w = w0_sup * e_gamma;
  return b;
}

double support_bound(double rho0, double K, double gamma, double l1_w0, double t) {
  return rho0 + K * t * std::exp(gamma * t) * l1_w0;
}

BoundAuditor::BoundAuditor(const ModelParams& p, double K, const Field& u0, const Field& w0,
                           double tolerance)
    : params_(p),
      K_(K),
      u0_(u0),
      w0_(w0),
      tolerance_(tolerance),
      rho0_(support_radius(u0)),
      l1_w0_(l1_norm(w0)) {}

const DiagnosticsRecord& BoundAuditor::observe(const SimState& s) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.l1_u = l1_norm(s.u);
  r.linf_u = linf_norm(s.u);
  r.l1_w = l1_norm(s.w);
  r.linf_w = linf_norm(s.w);
  r.tv_u = total_variation(s.u);
  r.support_u = support_radius(s.u);
  r.bounds = growth_bounds(params_, K_, u0_, w0_, s.t);
  r.bound_support = support_bound(rho0_, K_, params_.gamma, l1_w0_, s.t);
  const double f = 1.0 + tolerance_;
  r.pass_l1_u = r.l1_u <= r.bounds.l1_u * f;
  r.pass_linf_u = r.linf_u <= r.bounds.linf_u * f;
  r.pass_l1_w = r.l1_w <= r.bounds.l1_w * f;
  r.pass_linf_w = r.linf_w <= r.bounds.linf_w * f;
  r.pass_support = r.support_u <= r.bound_support + params_.ell;
  series_.push_back(r);
  return series_.back();
}

bool BoundAuditor::all_passed() const {
  for (const auto& r : series_) {
    if (!r.passed()) return false;
  }
  return true;
}

std::vector<MassSample> mass_series(const DiagnosticsSeries& d) {
  std::vector<MassSample> out;
  out.reserve(d.size());
  for (const auto& r : d) out.push_back({r.t, r.l1_u, r.l1_w});
  return out;
}

PeakSet detect_peaks(const Field& u, double rel_threshold) {
  if (!(rel_threshold > 0 && rel_threshold < 1)) {
    throw InvalidParameter("peak threshold must lie in (0, 1)");
  }
  const GridSpec& g = u.grid();
  const double floor = rel_threshold * linf_norm(u);
  PeakSet set;
  for (int j = 1; j + 1 < g.ny(); ++j) {
    for (int i = 1; i + 1 < g.nx(); ++i) {
      const double v = u(i, j);
      if (v < floor || v <= 0) continue;
      bool strict = true;
      for (int b = -1; b <= 1 && strict; ++b) {
        for (int a = -1; a <= 1; ++a) {
          if ((a != 0 || b != 0) && !(v > u(i + a, j + b))) {
            strict = false;
            break;
          }
        }
      }
      if (strict) set.peaks.push_back({g.xc(i), g.yc(j), v});
    }
  }
  if (set.peaks.size() >= 2) {
    double total = 0;
    for (std::size_t k = 0; k < set.peaks.size(); ++k) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < set.peaks.size(); ++m) {
        if (m == k) continue;
        nearest = std::min(nearest, std::hypot(set.peaks[k].x - set.peaks[m].x,
                                               set.peaks[k].y - set.peaks[m].y));
      }
      total += nearest;
    }
    set.mean_spacing = total / static_cast<double>(set.peaks.size());
  }
  return set;
}

}  // namespace hypara
