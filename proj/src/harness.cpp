#include "breakup/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "breakup/evolve1d.hpp"
#include "breakup/evolve2d.hpp"
#include "breakup/fft.hpp"
#include "breakup/hopf_exact.hpp"
#include "breakup/initial_data.hpp"
#include "breakup/snapshot.hpp"
#include "breakup/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace breakup {

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json event_json(const TrackerEvent& e) {
  if (!e.fired) return json(nullptr);
  return json{{"t_sample", number(e.t_sample)}, {"t_interpolated", number(e.t_interpolated)},
              {"delta", number(e.delta)},       {"B", number(e.B)},
              {"alpha", number(e.alpha)},       {"A", number(e.A)}};
}

json fit_json(const ModulusFit& f) {
  return json{{"A", number(f.A)},         {"B", number(f.B)},
              {"delta", number(f.delta)}, {"Delta", number(f.Delta)},
              {"k_first", f.k_first},     {"k_last", f.k_last},
              {"points", f.points},       {"floor", f.floor},
              {"condition", number(f.condition)}};
}

json phase_json(const PhaseFit& f) {
  return json{{"C", number(f.C)},
              {"alpha", number(f.alpha)},
              {"Delta2", number(f.Delta2)},
              {"points", f.points},
              {"condition", number(f.condition)}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

constexpr double kTimeTol = 1e-12;

// Uniform view of the 1D and 2D evolvers for the run loop.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual double time() const = 0;
  virtual long steps() const = 0;
  virtual double dt() const = 0;
  virtual void step(double h) = 0;
  virtual void set_dt(double dt) = 0;
  virtual Spectrum1D tracked_spectrum() const = 0;
  virtual void record(ConservationTrace& trace) const = 0;
  virtual void snapshot(const fs::path& path, std::uint64_t hash) const = 0;
  virtual void checkpoint(const fs::path& path, std::uint64_t hash) const = 0;
  virtual std::vector<std::string> warnings() const { return {}; }
};

class Stepper1D final : public Stepper {
 public:
  explicit Stepper1D(Evolver1D ev) : ev_(std::move(ev)) {}
  double time() const override { return ev_.time(); }
  long steps() const override { return ev_.steps(); }
  double dt() const override { return ev_.config().dt; }
  void step(double h) override { ev_.step(h); }
  void set_dt(double dt) override { ev_.set_dt(dt); }
  Spectrum1D tracked_spectrum() const override { return ev_.spectrum(); }
  void record(ConservationTrace& trace) const override { trace.record(ev_.time(), ev_.field()); }
  void snapshot(const fs::path& path, std::uint64_t hash) const override {
    write_snapshot(path, ev_.field(), SnapshotMeta{ev_.time(), hash});
  }
  void checkpoint(const fs::path& path, std::uint64_t hash) const override { write_checkpoint(path, ev_, hash); }
  std::vector<std::string> warnings() const override { return ev_.warnings(); }
  const Evolver1D& evolver() const { return ev_; }

 private:
  Evolver1D ev_;
};

class Stepper2D final : public Stepper {
 public:
  explicit Stepper2D(Evolver2D ev) : ev_(std::move(ev)) {}
  double time() const override { return ev_.time(); }
  long steps() const override { return ev_.steps(); }
  double dt() const override { return ev_.config().dt; }
  void step(double h) override { ev_.step(h); }
  void set_dt(double dt) override { ev_.set_dt(dt); }
  Spectrum1D tracked_spectrum() const override { return ev_.slice(); }
  void record(ConservationTrace& trace) const override { trace.record(ev_.time(), ev_.field()); }
  void snapshot(const fs::path& path, std::uint64_t hash) const override {
    write_snapshot(path, ev_.field(), SnapshotMeta{ev_.time(), hash});
  }
  void checkpoint(const fs::path& path, std::uint64_t hash) const override { write_checkpoint(path, ev_, hash); }
  const Evolver2D& evolver() const { return ev_; }

 private:
  Evolver2D ev_;
};

// Sync and async tracking behind one interface. The stop decision after
// submission i only looks at samples < i, so both modes stop at the same step.
class TrackerDriver {
 public:
  TrackerDriver(const WindowPolicy& policy, double resolution, double t_start, bool async) {
    if (async) {
      async_ = std::make_unique<AsyncTracker>(policy, resolution, t_start);
    } else {
      sync_ = std::make_unique<Tracker>(policy, resolution, t_start);
    }
  }

  void submit(double t, Spectrum1D v) {
    ++submitted_;
    if (async_) {
      async_->submit(t, std::move(v));
      return;
    }
    const bool before = sync_->critical_found();
    sync_->observe(t, v);
    if (!before && sync_->critical_found()) fired_at_ = submitted_;
  }

  bool stop_requested() {
    if (submitted_ < 2) return false;
    if (async_) return async_->critical_found_within(submitted_ - 1);
    return fired_at_ != 0 && fired_at_ <= submitted_ - 1;
  }

  TrackerTrace finish() { return async_ ? async_->finish() : sync_->trace(); }

 private:
  std::unique_ptr<Tracker> sync_;
  std::unique_ptr<AsyncTracker> async_;
  std::size_t submitted_ = 0;
  std::size_t fired_at_ = 0;
};

std::string snapshot_name(long step) {
  std::ostringstream os;
  os << "snap_" << std::setw(8) << std::setfill('0') << step << ".bin";
  return os.str();
}

void write_conservation(const fs::path& path, const ConservationTrace& c) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << std::setprecision(17) << "t,quantity,drift\n";
  const auto d = c.drift();
  for (std::size_t i = 0; i < c.times().size(); ++i) {
    out << c.times()[i] << ',' << c.values()[i] << ',' << d[i] << '\n';
  }
}

}  // namespace

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kCleanFinish: return "clean_finish";
    case RunStatus::kBreakupDetected: return "breakup_detected";
    case RunStatus::kResolutionInsufficient: return "resolution_insufficient";
    case RunStatus::kFailed: return "failed";
  }
  return "?";
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::kCleanFinish: return 0;
    case RunStatus::kBreakupDetected: return 3;
    case RunStatus::kResolutionInsufficient: return 4;
    case RunStatus::kFailed: return 1;
  }
  return 1;
}

std::string RunSummary::to_json() const {
  json j;
  j["preset"] = preset;
  j["config_hash"] = config_hash;
  j["status"] = to_string(status);
  j["exit_code"] = exit_code(status);
  if (!error.empty()) j["error"] = error;
  j["wall_time_seconds"] = wall_time;
  j["final_time"] = number(final_time);
  j["steps"] = steps;
  j["drift"] = json{{"kind", drift_kind},
                    {"final", number(drift.drift)},
                    {"trailing_spectral_magnitude", number(drift.trailing)},
                    {"optimistic", drift.optimistic}};
  j["tracker"] = json{{"enabled", tracked},
                      {"resolution_m", number(resolution)},
                      {"samples", samples},
                      {"gaps", gaps},
                      {"last_window_status", last_window_status}};
  j["events"] = json{{"t_delta_below_m", event_json(below_resolution)},
                     {"t_delta_below_0", event_json(sign_change)}};
  j["warnings"] = warnings;
  j["reference_error"] = reference_error ? number(*reference_error) : json(nullptr);
  if (gradient) {
    j["gradient"] = json{{"ux_max", number(gradient->ux_max)},
                         {"x", gradient->x},
                         {"y", gradient->y},
                         {"uy_at_ux_max", number(gradient->uy_at_ux_max)}};
  }
  if (constraint_residual) j["constraint_residual"] = number(*constraint_residual);
  j["manifest"] = manifest;
  return j.dump(2);
}

RunResult execute(const RunConfig& cfg, bool write_outputs) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  RunSummary& s = result.summary;
  s.preset = cfg.preset;
  const std::uint64_t hash = cfg.hash();
  s.config_hash = hex_hash(hash);
  const fs::path dir = cfg.output_dir;
  std::unique_ptr<Stepper> stepper;
  std::unique_ptr<TrackerDriver> tracker;
  std::unique_ptr<ConservationTrace> conservation;

  auto add_file = [&](const fs::path& p) { s.manifest.push_back(p.string()); };

  try {
    validate(cfg);
    if (write_outputs) {
      fs::create_directories(dir);
      write_text(dir / "config.txt", cfg.serialize());
      add_file(dir / "config.txt");
      if (cfg.snapshot_every > 0) fs::create_directories(dir / "snapshots");
    }
    set_fft_threads(cfg.workers);
    const DataKind kind = parse_data_kind(cfg.data);
    double resolution = 0.0;
    if (cfg.is_2d()) {
      const Evolver2DConfig ec = cfg.evolver2d();
      resolution = ec.grid.x().resolution();
      if (!cfg.checkpoint_in.empty()) {
        stepper = std::make_unique<Stepper2D>(restore_checkpoint(cfg.checkpoint_in, ec));
      } else {
        const Field2D u0 = initial_data(kind, ec.grid, &s.warnings);
        stepper = std::make_unique<Stepper2D>(Evolver2D(ec, u0));
      }
      conservation = std::make_unique<ConservationTrace>(QuantityKind::kMass2);
    } else {
      const Evolver1DConfig ec = cfg.evolver1d();
      resolution = ec.grid.resolution();
      if (!cfg.checkpoint_in.empty()) {
        stepper = std::make_unique<Stepper1D>(restore_checkpoint(cfg.checkpoint_in, ec));
      } else {
        const Field1D u0 = initial_data(kind, ec.grid, &s.warnings);
        stepper = std::make_unique<Stepper1D>(Evolver1D(ec, u0));
      }
      conservation = std::make_unique<ConservationTrace>(
          cfg.equation == "hopf" ? QuantityKind::kEnergy3 : QuantityKind::kMass2);
    }
    s.drift_kind = conservation->kind() == QuantityKind::kEnergy3 ? "energy3" : "mass2";
    s.resolution = resolution;
    s.tracked = cfg.track;
    if (cfg.track) {
      tracker = std::make_unique<TrackerDriver>(cfg.policy(), resolution, cfg.track_from, cfg.workers > 1);
    }

    bool switched = !(cfg.t_switch > 0.0);
    if (!switched && stepper->time() >= cfg.t_switch - kTimeTol) {
      stepper->set_dt(cfg.dt_late);
      switched = true;
    }
    auto sample = [&] {
      stepper->record(*conservation);
      if (tracker) tracker->submit(stepper->time(), stepper->tracked_spectrum());
    };
    sample();
    while (stepper->time() < cfg.t_end - kTimeTol) {
      double h = stepper->dt();
      const double now = stepper->time();
      if (!switched && now + h > cfg.t_switch - kTimeTol) h = cfg.t_switch - now;
      if (now + h * (1.0 + 1e-9) > cfg.t_end) h = std::min(h, cfg.t_end - now);
      stepper->step(h);
      if (!switched && stepper->time() >= cfg.t_switch - kTimeTol) {
        stepper->set_dt(cfg.dt_late);
        switched = true;
      }
      const bool last = stepper->time() >= cfg.t_end - kTimeTol;
      if (stepper->steps() % cfg.snapshot_stride == 0 || last) {
        sample();
        if (cfg.stop_at_breakup && tracker && tracker->stop_requested()) break;
      }
      if (write_outputs && cfg.snapshot_every > 0 && stepper->steps() % cfg.snapshot_every == 0) {
        const fs::path p = dir / "snapshots" / snapshot_name(stepper->steps());
        stepper->snapshot(p, hash);
        add_file(p);
      }
    }
  } catch (const std::exception& e) {
    s.status = RunStatus::kFailed;
    s.error = e.what();
  }

  // Everything below also runs after a failure, on whatever state exists.
  try {
    if (tracker) {
      result.trace = tracker->finish();
      s.samples = result.trace.samples.size();
      for (const auto& smp : result.trace.samples) s.gaps += smp.ok ? 0 : 1;
      s.below_resolution = result.trace.below_resolution;
      s.sign_change = result.trace.sign_change;
      for (auto it = result.trace.samples.rbegin(); it != result.trace.samples.rend(); ++it) {
        if (it->ok) {
          s.last_window_status = to_string(it->status);
          break;
        }
      }
    }
    if (conservation) {
      result.drift_times = conservation->times();
      result.drift_values = conservation->drift();
    }
    if (stepper) {
      s.final_time = stepper->time();
      s.steps = stepper->steps();
      for (const auto& w : stepper->warnings()) s.warnings.push_back(w);
      const Spectrum1D tracked = stepper->tracked_spectrum();
      s.drift = assess_drift(conservation ? conservation->final_drift() : 0.0, tracked);
      if (const auto* s1 = dynamic_cast<const Stepper1D*>(stepper.get())) {
        result.final1d = s1->evolver().field();
        if (cfg.reference == "hopf_exact") {
          const Profile prof = profile_for(parse_data_kind(cfg.data));
          const CriticalPoint cp = critical_point_analytic(prof);
          if (s.final_time <= cp.t_c + kTimeTol) {
            const HopfExactResult ex = hopf_exact(prof, result.final1d->grid, std::min(s.final_time, cp.t_c));
            s.reference_error = sup_diff(*result.final1d, ex.u);
            if (ex.relaxed) s.warnings.push_back("exact reference accepted at the relaxed tolerance");
          } else {
            s.warnings.push_back("exact reference skipped: final time is past the analytic break-up");
          }
        }
      } else if (const auto* s2 = dynamic_cast<const Stepper2D*>(stepper.get())) {
        result.final2d = s2->evolver().field();
        const GradientMaps g = gradient_maps(*result.final2d);
        s.gradient = GradientSummary{g.ux_max, g.ux_argmax_x, g.ux_argmax_y, g.uy_at_ux_max};
        s.constraint_residual = constraint_residual(s2->evolver().spectrum());
      }
    }
    if (s.status != RunStatus::kFailed) {
      const bool guard_tripped = std::any_of(s.warnings.begin(), s.warnings.end(), [](const std::string& w) {
        return w.rfind("resolution:", 0) == 0;
      });
      const bool window_bad = !s.last_window_status.empty() && s.last_window_status != "ok";
      if (s.sign_change.fired) {
        s.status = RunStatus::kBreakupDetected;
      } else if (guard_tripped || window_bad) {
        s.status = RunStatus::kResolutionInsufficient;
      } else {
        s.status = RunStatus::kCleanFinish;
      }
    }
    if (write_outputs && stepper) {
      if (tracker) {
        write_trace_csv(dir / "trace.csv", result.trace);
        add_file(dir / "trace.csv");
      }
      if (conservation) {
        write_conservation(dir / "conservation.csv", *conservation);
        add_file(dir / "conservation.csv");
      }
      stepper->snapshot(dir / "final.bin", hash);
      add_file(dir / "final.bin");
      if (cfg.checkpoint_out) {
        stepper->checkpoint(dir / "checkpoint.bin", hash);
        add_file(dir / "checkpoint.bin");
      }
    }
  } catch (const std::exception& e) {
    s.status = RunStatus::kFailed;
    if (!s.error.empty()) s.error += "; ";
    s.error += e.what();
  }

  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (write_outputs) {
    try {
      fs::create_directories(dir);
      s.manifest.push_back((dir / "summary.json").string());
      write_text(dir / "summary.json", s.to_json() + "\n");
    } catch (const std::exception& e) {
      s.status = RunStatus::kFailed;
      s.error += std::string(s.error.empty() ? "" : "; ") + e.what();
    }
  }
  return result;
}

RunSummary run(const RunConfig& cfg) { return execute(cfg, true).summary; }

std::string SweepReport::to_json() const {
  json j;
  j["epsilons"] = epsilons;
  j["times"] = times;
  j["fits"] = json::array();
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const ScalingFit& f = fits[i];
    j["fits"].push_back(json{{"t", times[i]},
                             {"a", number(f.a)},
                             {"b", number(f.b)},
                             {"r", number(f.r)},
                             {"confirmed", f.confirmed},
                             {"residuals", f.residuals}});
  }
  if (!error.empty()) j["error"] = error;
  return j.dump(2);
}

SweepReport sweep_epsilon(const RunConfig& base, const std::vector<double>& epsilons,
                          const std::vector<double>& times, int workers) {
  if (epsilons.size() < 3) throw Error("sweep: need at least three epsilon values");
  for (double e : epsilons) {
    if (!(e > 0.0)) throw Error("sweep: epsilon values must be positive");
  }
  if (times.empty()) throw Error("sweep: need at least one comparison time");
  std::vector<double> sorted_times = times;
  std::sort(sorted_times.begin(), sorted_times.end());

  const bool two_d = base.is_2d();
  std::string dispersive = base.equation;
  std::string reference = "hopf";
  if (two_d) {
    dispersive = "kp";
    reference = "dkp";
  } else if (dispersive == "hopf") {
    dispersive = "kdv";
  }

  // Member 0 is the dispersionless reference.
  const std::size_t members = epsilons.size() + 1;
  std::vector<std::vector<Field1D>> fields1(members);
  std::vector<std::vector<Field2D>> fields2(members);
  std::vector<std::string> errors(members);

  auto run_member = [&](std::size_t m) {
    try {
      RunConfig c = base;
      c.equation = m == 0 ? reference : dispersive;
      c.epsilon = m == 0 ? 0.0 : epsilons[m - 1];
      c.track = false;
      validate(c);
      const DataKind kind = parse_data_kind(c.data);
      if (two_d) {
        const Evolver2DConfig ec = c.evolver2d();
        Evolver2D ev(ec, initial_data(kind, ec.grid));
        for (double t : sorted_times) {
          ev.advance_to(t);
          fields2[m].push_back(ev.field());
        }
      } else {
        const Evolver1DConfig ec = c.evolver1d();
        Evolver1D ev(ec, initial_data(kind, ec.grid));
        for (double t : sorted_times) {
          ev.advance_to(t);
          fields1[m].push_back(ev.field());
        }
      }
    } catch (const std::exception& e) {
      errors[m] = e.what();
    }
  };

  const std::size_t pool = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, members);
  if (pool == 1) {
    for (std::size_t m = 0; m < members; ++m) run_member(m);
  } else {
    std::mutex mu;
    std::size_t next = 0;
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < pool; ++w) {
      threads.emplace_back([&] {
        for (;;) {
          std::size_t m;
          {
            std::lock_guard lock(mu);
            if (next >= members) return;
            m = next++;
          }
          run_member(m);
        }
      });
    }
    for (auto& t : threads) t.join();
  }

  SweepReport report;
  report.epsilons = epsilons;
  report.times = sorted_times;
  for (std::size_t m = 0; m < members; ++m) {
    if (!errors[m].empty()) {
      if (!report.error.empty()) report.error += "; ";
      report.error += (m == 0 ? std::string("reference") : "epsilon " + std::to_string(epsilons[m - 1])) + ": " +
                      errors[m];
    }
  }
  report.diffs.assign(sorted_times.size(), std::vector<double>(epsilons.size(), NAN));
  for (std::size_t ti = 0; ti < sorted_times.size(); ++ti) {
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      const std::size_t m = e + 1;
      if (two_d) {
        if (fields2[0].size() > ti && fields2[m].size() > ti) report.diffs[ti][e] = sup_diff(fields2[m][ti], fields2[0][ti]);
      } else {
        if (fields1[0].size() > ti && fields1[m].size() > ti) report.diffs[ti][e] = sup_diff(fields1[m][ti], fields1[0][ti]);
      }
    }
  }
  if (report.error.empty()) {
    for (std::size_t ti = 0; ti < sorted_times.size(); ++ti) {
      std::vector<std::pair<double, double>> samples;
      for (std::size_t e = 0; e < epsilons.size(); ++e) samples.emplace_back(epsilons[e], report.diffs[ti][e]);
      report.fits.push_back(scaling_regression(samples));
    }
  }
  return report;
}

void write_sweep(const fs::path& dir, const SweepReport& report) {
  fs::create_directories(dir);
  std::ofstream out(dir / "sweep.csv");
  if (!out) throw Error("cannot write '" + (dir / "sweep.csv").string() + "'");
  out << std::setprecision(17) << "t,epsilon,sup_diff\n";
  for (std::size_t ti = 0; ti < report.times.size(); ++ti) {
    for (std::size_t e = 0; e < report.epsilons.size(); ++e) {
      out << report.times[ti] << ',' << report.epsilons[e] << ',' << report.diffs[ti][e] << '\n';
    }
  }
  write_text(dir / "sweep.json", report.to_json() + "\n");
}

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "profile") return PlotKind::kProfile;
  if (name == "spectrum_loglog") return PlotKind::kSpectrumLogLog;
  if (name == "trace") return PlotKind::kTrace;
  if (name == "contour_slices") return PlotKind::kContourSlices;
  throw Error("unknown plot kind '" + name + "'");
}

std::vector<fs::path> emit_plotdata(const fs::path& run_dir, PlotKind kind, const std::vector<double>& y_offsets) {
  const fs::path final_snap = run_dir / "final.bin";
  const fs::path trace = run_dir / "trace.csv";
  const fs::path needed = kind == PlotKind::kTrace ? trace : final_snap;
  if (!fs::exists(needed)) throw Error("emit: missing artifact " + needed.string());
  const fs::path out_dir = run_dir / "plot";
  fs::create_directories(out_dir);
  std::vector<fs::path> written;

  auto open = [&](const std::string& name) {
    const fs::path p = out_dir / name;
    std::ofstream out(p);
    if (!out) throw Error("cannot open '" + p.string() + "' for writing");
    out << std::setprecision(17);
    written.push_back(p);
    return out;
  };

  if (kind == PlotKind::kTrace) {
    std::ifstream in(trace);
    auto out = open("trace.csv");
    out << in.rdbuf();
    return written;
  }

  const Snapshot snap = read_snapshot(final_snap);
  std::optional<Field1D> f1;
  std::optional<Field2D> f2;
  if (const auto* f = std::get_if<Field1D>(&snap.data)) f1 = *f;
  if (const auto* f = std::get_if<Field2D>(&snap.data)) f2 = *f;
  if (const auto* v = std::get_if<Spectrum1D>(&snap.data)) f1 = inverse_transform(*v);
  if (const auto* v = std::get_if<Spectrum2D>(&snap.data)) f2 = inverse_transform(*v);

  switch (kind) {
    case PlotKind::kProfile: {
      auto out = open("profile.dat");
      out << "# x u  (t = " << snap.meta.t << (f2 ? ", y = 0" : "") << ")\n";
      if (f1) {
        for (std::size_t i = 0; i < f1->grid.size(); ++i) out << f1->grid.x(i) << ' ' << f1->values[i] << '\n';
      } else {
        const std::size_t j0 = f2->grid.ny() / 2;
        for (std::size_t i = 0; i < f2->grid.nx(); ++i) out << f2->grid.x().x(i) << ' ' << f2->at(i, j0) << '\n';
      }
      break;
    }
    case PlotKind::kSpectrumLogLog: {
      const Spectrum1D v = f1 ? forward_transform(*f1) : tracker_slice(*f2, SliceKind::kYZeroCut);
      auto out = open("spectrum_loglog.dat");
      out << "# k ln|v|  (t = " << snap.meta.t << ")\n";
      for (std::size_t j = 1; j < v.grid.size() / 2; ++j) {
        const double a = std::abs(v.coeffs[j]);
        if (a > 0.0) out << v.grid.wavenumber(j) << ' ' << std::log(a) << '\n';
      }
      break;
    }
    case PlotKind::kContourSlices: {
      if (!f2) throw Error("emit: contour_slices needs a 2D run");
      const Grid1D& gy = f2->grid.y();
      std::vector<std::size_t> cols;
      for (double y : y_offsets) {
        const double pos = (y + kPi * gy.half_period()) / gy.dx();
        const long j = std::lround(pos);
        cols.push_back(static_cast<std::size_t>(((j % static_cast<long>(gy.size())) + static_cast<long>(gy.size())) %
                                                static_cast<long>(gy.size())));
      }
      auto out = open("contour_slices.dat");
      out << "# x";
      for (std::size_t c : cols) out << " u(y=" << gy.x(c) << ")";
      out << "  (t = " << snap.meta.t << ")\n";
      for (std::size_t i = 0; i < f2->grid.nx(); ++i) {
        out << f2->grid.x().x(i);
        for (std::size_t c : cols) out << ' ' << f2->at(i, c);
        out << '\n';
      }
      break;
    }
    case PlotKind::kTrace: break;
  }
  return written;
}

std::string OfflineFit::to_json() const {
  json j;
  j["t"] = t;
  j["window"] = json{{"k_min", selection.window.k_min},
                     {"k_max", selection.window.k_max},
                     {"floor", selection.window.floor},
                     {"k1", selection.k1},
                     {"status", to_string(selection.status)},
                     {"best_p", number(selection.best_p)},
                     {"above_floor", selection.above_floor}};
  j["modulus"] = fit_json(selection.fit);
  j["phase"] = phase_json(phase);
  if (consistency) {
    j["consistency"] = json{{"A_fit", consistency->A_fit}, {"A_predicted", consistency->A_predicted}};
  }
  return j.dump(2);
}

OfflineFit fit_snapshot(const fs::path& snapshot, const WindowPolicy& policy, SliceKind slice) {
  const Snapshot snap = read_snapshot(snapshot);
  Spectrum1D v;
  if (const auto* f = std::get_if<Field1D>(&snap.data)) v = forward_transform(*f);
  if (const auto* s = std::get_if<Spectrum1D>(&snap.data)) v = *s;
  if (const auto* f = std::get_if<Field2D>(&snap.data)) v = tracker_slice(*f, slice);
  if (const auto* s = std::get_if<Spectrum2D>(&snap.data)) v = tracker_slice(inverse_transform(*s), slice);
  OfflineFit out;
  out.t = snap.meta.t;
  out.selection = select_window(v, policy);
  out.phase = fit_phase(unwrap_phase(v, out.selection.window));
  if (out.selection.fit.B > 1.0) out.consistency = consistency_AB(out.selection.fit, v.grid);
  return out;
}

int worker_budget() {
  const char* env = std::getenv("BREAKUP_WORKERS");
  if (env == nullptr) return 1;
  const int w = std::atoi(env);
  return w >= 1 ? w : 1;
}

}  // namespace breakup
