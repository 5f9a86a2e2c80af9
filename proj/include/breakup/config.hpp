#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "breakup/evolve1d.hpp"
#include "breakup/evolve2d.hpp"
#include "breakup/singtrack.hpp"

namespace breakup {

/// Flat run description. Every quantity is nondimensional.
///
/// File format: one `key = value` per line, `#` starts a comment. Keys are
/// the field names below; unknown keys are rejected.
struct RunConfig {
  std::string preset;      // informational
  std::string equation = "hopf";  // hopf, burgers, kdv, dkp, kp
  int lambda = -1;
  double epsilon = 0.0;
  // 1D grid
  std::size_t n = 1 << 14;
  double l = 5.0;
  // 2D grid
  std::size_t nx = 1 << 10;
  std::size_t ny = 1 << 9;
  double lx = 5.0;
  double ly = 5.0;
  double dt = 3.6e-5;
  double t_end = 0.18;
  /// When positive, dt switches to dt_late once t reaches t_switch.
  double t_switch = 0.0;
  double dt_late = 0.0;
  std::string data = "sech2_1d";
  // tracker
  bool track = true;
  double p = 0.01;
  double k_min = 10.0;
  double floor = 1e-10;
  bool half_rule = true;
  double k_cap_fraction = 0.0;
  double track_from = 0.0;
  bool stop_at_breakup = false;
  std::string slice = "y_zero_cut";
  // cadence and output
  int snapshot_stride = 1;  // tracker / diagnostics cadence in steps
  int snapshot_every = 0;   // snapshot files every this many steps, 0 = none
  std::string output_dir = "out";
  std::string checkpoint_in;
  bool checkpoint_out = false;
  std::string reference = "none";  // none, hopf_exact
  bool dealias = false;
  int workers = 1;
  bool allow_hpc = false;

  bool is_2d() const { return equation == "dkp" || equation == "kp"; }

  /// Applies one key = value pair; throws Error on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Canonical key -> value map (17 significant digits for reals).
  std::map<std::string, std::string> to_map() const;
  /// FNV-1a 64 of the canonical serialization.
  std::uint64_t hash() const;
  std::string serialize() const;

  Evolver1DConfig evolver1d() const;
  Evolver2DConfig evolver2d() const;
  WindowPolicy policy() const;
};

/// Throws Error on invalid combinations, including HPC-scale 2D grids
/// (more than 2^24 points) without allow_hpc.
void validate(const RunConfig& cfg);

/// Lines apply on top of `base`.
RunConfig parse_config(const std::string& text, const RunConfig& base = {});
RunConfig load_config(const std::filesystem::path& path, const RunConfig& base = {});

/// Names of the built-in presets, and their configurations.
std::vector<std::string> preset_names();
RunConfig preset(const std::string& name);

std::string hex_hash(std::uint64_t h);

}  // namespace breakup
