#include "hypara/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "hypara/analysis.hpp"
#include "hypara/config.hpp"
#include "hypara/convergence.hpp"
#include "hypara/errors.hpp"
#include "hypara/io.hpp"
#include "hypara/kernel.hpp"
#include "hypara/velocity.hpp"

namespace hypara {

namespace {

constexpr double kParabolicOrderFloor = 1.8;
constexpr double kHyperbolicOrderFloor = 0.8;

struct RunArgs {
  std::string config;
  std::string preset;
  double dx = 0;
  double t_end = 0;
  std::string out;
  double snapshots_every = -1;
  bool audit = false;
  double ell = 0;
};

int do_run(const RunArgs& a, const std::string& usage, std::ostream& out, std::ostream& err) {
  if (a.config.empty() && a.preset.empty()) {
    err << "run: need --config FILE or --preset pcp|de\n" << usage;
    return kExitInvalid;
  }
  if (!a.config.empty() && !a.preset.empty()) {
    err << "run: --config and --preset are mutually exclusive\n" << usage;
    return kExitInvalid;
  }
  RunConfig cfg;
  if (!a.config.empty()) {
    cfg = load_config(a.config);
  } else if (a.preset == "pcp") {
    cfg = preset_pcp(a.dx > 0 ? a.dx : kDeskSpacing);
  } else if (a.preset == "de") {
    cfg = preset_de(a.dx > 0 ? a.dx : kDeskSpacing);
  } else {
    err << "run: unknown preset '" << a.preset << "'\n" << usage;
    return kExitInvalid;
  }
  if (!a.config.empty() && a.dx > 0) {
    cfg.grid = GridSpec::with_spacing(cfg.grid.x_min(), cfg.grid.x_max(), cfg.grid.y_min(),
                                      cfg.grid.y_max(), a.dx);
  }
  if (a.t_end > 0) cfg.t_end = a.t_end;
  if (!a.out.empty()) cfg.output_dir = a.out;
  if (a.snapshots_every >= 0) cfg.snapshot_interval = a.snapshots_every;
  if (a.ell > 0) cfg.params.ell = a.ell;
  if (a.audit) cfg.audit = true;

  const ScenarioResult r = run_scenario(cfg);
  const auto& last = r.series.back();
  out << std::setprecision(10);
  out << "scenario " << cfg.scenario << "  grid " << cfg.grid.nx() << "x" << cfg.grid.ny()
      << "  steps " << r.steps << "  t " << r.final_state.t << '\n';
  out << "K " << r.norms.K << '\n';
  out << "mass_u " << last.l1_u << "  mass_w " << last.l1_w << "  max_u " << last.linf_u
      << "  max_w " << last.linf_w << '\n';
  out << "snapshots " << r.snapshots << "  bounds " << (r.bounds_passed ? "pass" : "FAIL")
      << '\n';
  if (cfg.audit && !r.bounds_passed) return kExitFailed;
  return kExitOk;
}

struct AuditArgs {
  double ell = 0.25;
  double kappa = 1;
  double dx = kDeskSpacing;
  int trials = 200;
  std::uint64_t seed = 1;
  double tol = 0.05;
};

int do_audit_kernel(const AuditArgs& a, std::ostream& out) {
  const Mollifier eta = build_mollifier(a.ell);
  const GridSpec g = GridSpec::with_spacing(-1, 1, -2, 2, a.dx);
  const KernelTable table = sample_kernel(eta, g);
  const KernelNorms n = compute_kernel_norms(eta, a.kappa);
  const VAuditReport rep = audit_v_condition(table, n, a.trials, a.seed, a.tol);
  out << std::setprecision(12);
  out << "ell " << a.ell << "  kappa " << a.kappa << "  eta_hat " << eta.eta_hat() << '\n';
  out << "grad_eta_W21 " << n.grad_eta_W21 << "  grad_eta_W1inf " << n.grad_eta_W1inf << '\n';
  out << "K " << n.K << '\n';
  for (std::size_t k = 0; k < rep.worst_ratio.size(); ++k) {
    out << "worst_ratio " << kVInequalityNames[k] << ' ' << rep.worst_ratio[k] << '\n';
  }
  out << "trials " << rep.trials << "  tolerance " << rep.tolerance << "  "
      << (rep.passed() ? "PASS" : "FAIL") << '\n';
  return rep.passed() ? kExitOk : kExitFailed;
}

void print_table(std::ostream& out, const char* title, const std::vector<ConvergenceRow>& rows) {
  out << title << '\n' << "h,steps,l1_error,order\n";
  for (const auto& r : rows) {
    out << r.h << ',' << r.steps << ',' << r.l1_error << ',';
    if (r.order) out << *r.order;
    out << '\n';
  }
}

bool orders_at_least(const std::vector<ConvergenceRow>& rows, double floor) {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const ConvergenceRow& r) { return !r.order || *r.order >= floor; });
}

int do_oracle_check(const std::vector<double>& spacings, std::ostream& out) {
  const auto para = parabolic_convergence(spacings);
  const auto hyper = hyperbolic_convergence(spacings);
  out << std::setprecision(8);
  print_table(out, "# diffusion vs heat-kernel solution", para);
  print_table(out, "# transport vs characteristics solution", hyper);
  const bool ok = orders_at_least(para, kParabolicOrderFloor) &&
                  orders_at_least(hyper, kHyperbolicOrderFloor);
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitFailed;
}

int do_peaks(const std::string& path, double threshold, std::ostream& out) {
  const Field u = read_snapshot(path);
  const PeakSet set = detect_peaks(u, threshold);
  out << std::setprecision(10) << "x,y,height\n";
  for (const auto& p : set.peaks) out << p.x << ',' << p.y << ',' << p.height << '\n';
  out << "peaks " << set.peaks.size() << "  mean_spacing ";
  if (set.mean_spacing) out << *set.mean_spacing;
  else out << "absent";
  out << '\n';
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlocal hyperbolic / parabolic predator-prey simulator", "hypara"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario");
  run_cmd->add_option("--config", run_args.config, "key = value config file");
  run_cmd->add_option("--preset", run_args.preset, "pcp or de");
  run_cmd->add_option("--dx", run_args.dx, "mesh spacing (dx = dy)");
  run_cmd->add_option("--t-end", run_args.t_end, "final time");
  run_cmd->add_option("--out", run_args.out, "output directory");
  run_cmd->add_option("--snapshots-every", run_args.snapshots_every, "snapshot interval");
  run_cmd->add_option("--ell", run_args.ell, "override the kernel radius");
  run_cmd->add_flag("--audit", run_args.audit, "hard per-step checks; exit 2 on failed bounds");

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit-kernel", "Kernel norms, K and velocity bound audit");
  audit_cmd->add_option("--ell", audit_args.ell, "kernel radius");
  audit_cmd->add_option("--kappa", audit_args.kappa, "maximal speed");
  audit_cmd->add_option("--dx", audit_args.dx, "mesh spacing");
  audit_cmd->add_option("--trials", audit_args.trials, "randomized trials");
  audit_cmd->add_option("--seed", audit_args.seed, "RNG seed");
  audit_cmd->add_option("--tol", audit_args.tol, "ratio tolerance");

  std::vector<double> spacings{0.04, 0.02, 0.01};
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Solver vs exact-solution convergence");
  oracle_cmd->add_option("--spacings", spacings, "mesh spacings, coarse to fine");

  std::string peaks_path;
  double peaks_threshold = kDefaultPeakThreshold;
  auto* peaks_cmd = app.add_subcommand("peaks", "Local maxima of a snapshot");
  peaks_cmd->add_option("snapshot", peaks_path, "HPSNAP1 file")->required();
  peaks_cmd->add_option("--threshold", peaks_threshold, "relative height threshold");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitInvalid;
  }

  try {
    if (run_cmd->parsed()) return do_run(run_args, run_cmd->help(), out, err);
    if (audit_cmd->parsed()) return do_audit_kernel(audit_args, out);
    if (oracle_cmd->parsed()) return do_oracle_check(spacings, out);
    if (peaks_cmd->parsed()) return do_peaks(peaks_path, peaks_threshold, out);
  } catch (const InvalidParameter& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const FormatError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Diverged& e) {
    err << "diverged: " << e.what() << '\n';
    return kExitFailed;
  } catch (const AuditFailure& e) {
    err << "audit failed: " << e.what() << '\n';
    return kExitFailed;
  } catch (const StepRejected& e) {
    err << "step rejected: " << e.what() << '\n';
    return kExitFailed;
  }
  err << app.help();
  return kExitInvalid;
}

}  // namespace hypara
