#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hypara/analysis.hpp"
#include "hypara/config.hpp"
#include "hypara/grid.hpp"
#include "hypara/kernel.hpp"

namespace hypara {

// Snapshot format: the text line "HPSNAP1 nx ny x_min x_max y_min y_max\n"
// (shortest round-trip decimals) followed by nx * ny little-endian IEEE-754
// binary64 values in row-major order (x fastest).
std::string snapshot_header(const GridSpec& g);
void write_snapshot(const Field& f, const std::filesystem::path& path);
// Throws FormatError on a malformed header, truncated or oversized payload, and
// on a grid mismatch when `expected` is given.
Field read_snapshot(const std::filesystem::path& path,
                    const std::optional<GridSpec>& expected = std::nullopt);

inline constexpr const char* kSeriesHeader =
    "t,l1_u,linf_u,l1_w,linf_w,tv_u,support_u,bound_l1_u,bound_linf_u,bound_l1_w,"
    "bound_linf_w,bound_support,pass_l1_u,pass_linf_u,pass_l1_w,pass_linf_w,pass_support";

// CSV with one header row; reals in shortest round-trip form, flags as 0/1.
void write_series(const DiagnosticsSeries& d, const std::filesystem::path& path);
DiagnosticsSeries read_series(const std::filesystem::path& path);

// Binary PGM (P5), width nx, height ny, maxval 255, top row = largest y.
// Gray = clamp(round(255 (f - lo) / (hi - lo)), 0, 255). Throws InvalidParameter if lo >= hi.
void render_pgm(const Field& f, double lo, double hi, const std::filesystem::path& path);

struct ScenarioResult {
  SimState final_state;
  DiagnosticsSeries series;
  KernelNorms norms;
  long steps = 0;
  int snapshots = 0;
  bool bounds_passed = true;
};

// Runs the configured scenario; when output_dir is set, writes u_NNNN / w_NNNN
// snapshots and images at each observation, plus series.csv and config.txt.
ScenarioResult run_scenario(const RunConfig& cfg);

}  // namespace hypara
