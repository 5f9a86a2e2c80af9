#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "breakup/field.hpp"

namespace breakup {

/// Raised when a window holds fewer usable coefficients than a fit needs.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Coefficients with k_min < k <= k_max and |v| > floor are used.
struct FitWindow {
  double k_min = 0.0;
  double k_max = 1e300;
  double floor = 1e-10;
};

/// ln|v| ~ A - B ln k - delta k over the window; Delta is the sup-norm residual.
struct ModulusFit {
  double A = 0.0;
  double B = 0.0;
  double delta = 0.0;
  double Delta = 0.0;
  double k_first = 0.0;  // smallest k used
  double k_last = 0.0;   // largest k used
  std::size_t points = 0;
  double floor = 0.0;
  /// Condition number of the column-scaled design matrix.
  double condition = 0.0;
};

/// Im ln v ~ C - alpha k; Delta2 is the sup-norm residual.
struct PhaseFit {
  double C = 0.0;
  double alpha = 0.0;
  double Delta2 = 0.0;
  std::size_t points = 0;
  double condition = 0.0;
};

/// Least squares on raw samples, k > 0. Throws InsufficientData below 8 points.
ModulusFit fit_modulus(std::span<const double> k, std::span<const double> log_abs);
ModulusFit fit_modulus(const Spectrum1D& v, const FitWindow& window);

/// Unwraps phases given from the largest k downward: each value is moved by
/// +-pi while that shrinks the jump to its predecessor.
std::vector<double> unwrap_phase(std::span<const double> phase_descending);

struct UnwrappedPhase {
  std::vector<double> k;    // descending
  std::vector<double> phi;  // unwrapped, same order
};

/// Collects arg v over the window (positive k, zero or sub-floor coefficients
/// skipped) and unwraps it.
UnwrappedPhase unwrap_phase(const Spectrum1D& v, const FitWindow& window);

PhaseFit fit_phase(std::span<const double> k, std::span<const double> phi);
PhaseFit fit_phase(const UnwrappedPhase& phase);

struct WindowPolicy {
  /// Target residual; p <= 0 skips the search and fits up to k1.
  double p = 0.01;
  double k_min = 10.0;
  double floor = 1e-10;
  /// Require the window to hold at least half of the positive-k coefficients above the floor.
  bool half_rule = true;
  /// If positive, k_max is additionally capped at this fraction of the largest wavenumber.
  double k_cap_fraction = 0.0;
  std::size_t min_points = 8;
};

void validate(const WindowPolicy& policy);

enum class WindowStatus {
  kOk,
  /// The chosen window holds fewer than half the above-floor coefficients.
  kHalfRuleFailed,
  /// Even the smallest window misses the residual target.
  kTargetUnreachable,
};

std::string to_string(WindowStatus status);

struct WindowSelection {
  FitWindow window;
  ModulusFit fit;
  WindowStatus status = WindowStatus::kOk;
  double k1 = 0.0;
  /// Smallest residual met during the search.
  double best_p = 0.0;
  std::size_t above_floor = 0;
};

/// k_max = min(k1, k2): k1 the largest k with |v| > floor, k2 the largest
/// window end whose fit residual stays below p (bisection on the end index).
/// Throws InsufficientData when fewer than min_points candidates exist.
WindowSelection select_window(const Spectrum1D& v, const WindowPolicy& policy);

struct ConsistencyAB {
  double A_fit = 0.0;
  double A_predicted = 0.0;
};

/// A_predicted = ln(2 pi)/2 + (B - 1/2) ln(B - 1) - (B - 1) - ln(2 pi L / N),
/// the amplitude implied by B for an isolated singularity at the grid's
/// coefficient normalization. Throws for B <= 1.
ConsistencyAB consistency_AB(const ModulusFit& fit, const Grid1D& grid);

struct TrackerSample {
  double t = 0.0;
  bool ok = false;
  std::string gap;  // reason when !ok
  ModulusFit modulus;
  PhaseFit phase;
  WindowStatus status = WindowStatus::kOk;
};

struct TrackerEvent {
  bool fired = false;
  double t_sample = 0.0;
  /// Linear interpolation of the crossing between bracketing samples.
  double t_interpolated = 0.0;
  double delta = 0.0;
  double B = 0.0;
  double alpha = 0.0;
  double A = 0.0;
};

struct TrackerTrace {
  double resolution = 0.0;  // m = 2 pi L / N
  std::vector<TrackerSample> samples;
  TrackerEvent below_resolution;  // first delta < m
  TrackerEvent sign_change;       // first delta <= 0
};

/// Fits every observed spectrum and records the delta events. Fit failures
/// become gaps; observe never throws for bad spectra.
class Tracker {
 public:
  Tracker(const WindowPolicy& policy, double resolution, double t_start = 0.0);

  void observe(double t, const Spectrum1D& v);
  const TrackerTrace& trace() const { return trace_; }
  bool critical_found() const { return trace_.sign_change.fired; }
  /// Samples with t >= t_start were fitted; earlier ones are ignored.
  double t_start() const { return t_start_; }

 private:
  WindowPolicy policy_;
  double t_start_;
  TrackerTrace trace_;
  std::optional<TrackerSample> last_ok_;
};

/// Runs a Tracker on its own thread. Spectra are copied on submission and
/// processed in order, so the trace equals the synchronous one.
class AsyncTracker {
 public:
  AsyncTracker(const WindowPolicy& policy, double resolution, double t_start = 0.0);
  ~AsyncTracker();
  AsyncTracker(const AsyncTracker&) = delete;
  AsyncTracker& operator=(const AsyncTracker&) = delete;

  void submit(double t, Spectrum1D v);
  /// Blocks until the first `count` submissions are processed.
  void wait_for(std::size_t count);
  /// Blocks until everything submitted is processed.
  TrackerTrace finish();
  /// Snapshot of the state after the first `count` submissions (waits).
  bool critical_found_within(std::size_t count);

 private:
  void run();

  Tracker tracker_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<std::pair<double, Spectrum1D>> queue_;
  std::size_t submitted_ = 0;
  std::size_t processed_ = 0;
  std::size_t critical_at_ = 0;  // 1-based submission index of the sign-change sample, 0 if none
  bool stop_ = false;
  std::thread worker_;
};

/// Columns t,A,B,delta,Delta,C,alpha,Delta2,k_min,k_max,cond; gaps keep t and leave the rest empty.
void write_trace_csv(const std::filesystem::path& path, const TrackerTrace& trace);

}  // namespace breakup
