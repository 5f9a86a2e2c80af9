#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "breakup/config.hpp"
#include "breakup/diagnostics.hpp"
#include "breakup/singtrack.hpp"

namespace breakup {

enum class RunStatus { kCleanFinish, kBreakupDetected, kResolutionInsufficient, kFailed };

std::string to_string(RunStatus status);
/// 0 clean finish, 3 break-up detected, 4 resolution insufficient, 1 failed.
int exit_code(RunStatus status);

struct GradientSummary {
  double ux_max = 0.0;
  double x = 0.0;
  double y = 0.0;
  double uy_at_ux_max = 0.0;
};

struct RunSummary {
  std::string preset;
  std::string config_hash;
  RunStatus status = RunStatus::kCleanFinish;
  std::string error;
  double wall_time = 0.0;
  double final_time = 0.0;
  long steps = 0;
  std::string drift_kind;
  DriftAssessment drift;
  bool tracked = false;
  double resolution = 0.0;
  std::size_t samples = 0;
  std::size_t gaps = 0;
  TrackerEvent below_resolution;
  TrackerEvent sign_change;
  std::string last_window_status;
  std::vector<std::string> warnings;
  std::optional<double> reference_error;
  std::optional<GradientSummary> gradient;
  std::optional<double> constraint_residual;
  std::vector<std::string> manifest;

  std::string to_json() const;
};

struct RunResult {
  RunSummary summary;
  TrackerTrace trace;
  std::vector<double> drift_times;
  std::vector<double> drift_values;
  std::optional<Field1D> final1d;
  std::optional<Field2D> final2d;
};

/// Evolves, tracks and monitors one configuration. Errors are caught and
/// reported through the summary (status kFailed). With write_outputs the
/// summary, trace, conservation series, final state and optional
/// snapshots/checkpoint land in cfg.output_dir, also after a failure.
RunResult execute(const RunConfig& cfg, bool write_outputs = true);
RunSummary run(const RunConfig& cfg);

struct SweepReport {
  std::vector<double> epsilons;
  std::vector<double> times;
  std::vector<std::vector<double>> diffs;  // [time][epsilon]
  std::vector<ScalingFit> fits;            // per time
  std::string error;                       // set when a member failed

  std::string to_json() const;
};

/// Runs the dispersionless reference (epsilon = 0) and one dispersive run per
/// epsilon on identical grids and steps, compares them in the sup norm at the
/// given times and regresses log10(diff) on log10(eps). Members run on up to
/// `workers` threads. Needs at least three epsilons.
SweepReport sweep_epsilon(const RunConfig& base, const std::vector<double>& epsilons,
                          const std::vector<double>& times, int workers = 1);
void write_sweep(const std::filesystem::path& dir, const SweepReport& report);

enum class PlotKind { kProfile, kSpectrumLogLog, kTrace, kContourSlices };
PlotKind parse_plot_kind(const std::string& name);

/// Writes plain-text columns for plotting from a run directory. Throws Error
/// listing the missing artifacts. Returns the files written.
std::vector<std::filesystem::path> emit_plotdata(const std::filesystem::path& run_dir, PlotKind kind,
                                                 const std::vector<double>& y_offsets = {0.0, 1.0, 2.0});

struct OfflineFit {
  double t = 0.0;
  WindowSelection selection;
  PhaseFit phase;
  std::optional<ConsistencyAB> consistency;

  std::string to_json() const;
};

/// Fits a stored snapshot (1D field or spectrum; 2D uses the tracker slice).
OfflineFit fit_snapshot(const std::filesystem::path& snapshot, const WindowPolicy& policy,
                        SliceKind slice = SliceKind::kYZeroCut);

/// Worker budget from BREAKUP_WORKERS, default 1.
int worker_budget();

}  // namespace breakup
