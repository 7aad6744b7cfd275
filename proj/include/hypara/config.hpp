#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "hypara/analysis.hpp"
#include "hypara/coupling.hpp"
#include "hypara/grid.hpp"

namespace hypara {

inline constexpr double kDeskSpacing = 0.02;

struct RunConfig {
  GridSpec grid;
  ModelParams params;
  std::string scenario = "custom";  // "pcp", "de" or "custom"
  std::string u0_expr;              // initial data as expressions in x, y
  std::string w0_expr;
  double t_end = 1.0;
  double snapshot_interval = 0;  // 0: only the initial and final states
  std::string output_dir;        // empty: write nothing
  bool audit = false;
  std::uint64_t seed = 1;
  double tol_audit = kDefaultAuditTolerance;
  double peak_threshold = kDefaultPeakThreshold;
  HyperbolicStepConfig hyperbolic;
  ParabolicStepConfig parabolic;
  // Gray-level ranges for the PGM images.
  double u_lo = 0, u_hi = 1;
  double w_lo = 0, w_hi = 1;

  // Rejects bad rates, mu <= 0, ell < 3 max(dx, dy), bad step configs and
  // unparsable initial data, before any field is allocated.
  void validate() const;

  Field initial_u() const;
  Field initial_w() const;
};

// Predators chasing preys on [-1, 1] x [-2, 2].
RunConfig preset_pcp(double spacing = kDeskSpacing);

// Dynamic equilibrium on [-1, 1] x [-2, 2].
RunConfig preset_de(double spacing = kDeskSpacing);

// Flat key = value text; '#' starts a comment. Keys are the RunConfig field names,
// plus x_min x_max y_min y_max with either nx ny or dx, the rate names, and
// preset = pcp|de to start from a preset before applying the remaining keys.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
std::string format_config(const RunConfig& cfg);

}  // namespace hypara
