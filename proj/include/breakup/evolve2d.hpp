#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "breakup/field.hpp"
#include "breakup/initial_data.hpp"
#include "breakup/phi.hpp"

namespace breakup {

/// Which 1D spectrum the tracker sees.
///  kYZeroCut: transform in x of the profile u(x, 0, t).
///  kKyZero:   the ky = 0 column v(kx, 0, t) of the 2D spectrum.
enum class SliceKind { kYZeroCut, kKyZero };

SliceKind parse_slice_kind(const std::string& name);
std::string to_string(SliceKind kind);

struct Evolver2DConfig {
  int lambda = -1;  // -1: KP I / dKP I, +1: KP II / dKP II
  double epsilon = 0.0;
  Grid2D grid;
  double dt = 5e-4;
  double t_end = 0.0;
  DataKind data_kind = DataKind::kLineGaussian;
  int snapshot_stride = 1;
  bool dealias = false;
  SliceKind slice = SliceKind::kYZeroCut;
};

void validate(const Evolver2DConfig& cfg);

/// i (eps^2 kx^3 - lambda ky^2 / kx) on the half spectrum, zero on the kx = 0
/// row and on the kx Nyquist row.
std::vector<Complex> linear_symbol(const Evolver2DConfig& cfg);

/// -6 u u_x - lambda d_x^{-1} d_yy u, the right-hand side of dKP.
Field2D rhs_dkp(const Field2D& u, int lambda);

/// Largest |v(0, ky)| over ky != 0, times the cell area (continuous-transform units).
double constraint_residual(const Spectrum2D& v);

/// Raised when a 2D step produces non-finite values. The evolver is left
/// at its last finite state.
class NumericalBlowup2D : public Error {
 public:
  NumericalBlowup2D(const std::string& what, double t_last_good) : Error(what), t_(t_last_good) {}
  double time() const { return t_; }

 private:
  double t_;
};

/// Evolves u_t + 6 u u_x + eps^2 u_xxx + lambda d_x^{-1} d_yy u = 0 with ETD4.
/// The nonlocal term sits in the diagonal linear part together with the
/// dispersion, so only -3 d_x(u^2) is treated explicitly.
class Evolver2D {
 public:
  Evolver2D(const Evolver2DConfig& cfg, const Field2D& u0, double t0 = 0.0);
  Evolver2D(const Evolver2DConfig& cfg, const Spectrum2D& v0, double t0 = 0.0);
  ~Evolver2D();
  Evolver2D(Evolver2D&&) noexcept;
  Evolver2D& operator=(Evolver2D&&) noexcept;

  void step();
  void step(double h);
  void advance_to(double t);
  void set_dt(double dt);

  double time() const { return t0_ + static_cast<double>(steps_since_rebase_) * cfg_.dt + extra_; }
  long steps() const { return steps_; }
  const Evolver2DConfig& config() const { return cfg_; }
  Field2D field() const;
  Spectrum2D spectrum() const;
  /// 1D spectrum of the configured tracker slice.
  Spectrum1D slice() const;

 private:
  struct Impl;
  Evolver2DConfig cfg_;
  double t0_;
  long steps_since_rebase_ = 0;
  double extra_ = 0.0;
  long steps_ = 0;
  std::unique_ptr<Impl> impl_;
};

Field2D step_etd4_kp(const Field2D& u, const Evolver2DConfig& cfg);

Spectrum1D tracker_slice(const Field2D& u, SliceKind kind);

struct GradientMaps {
  Field2D abs_ux;
  Field2D abs_uy;
  double ux_max = 0.0;
  double ux_argmax_x = 0.0;
  double ux_argmax_y = 0.0;
  double uy_max = 0.0;
  double uy_argmax_x = 0.0;
  double uy_argmax_y = 0.0;
  /// u_y at the argmax of |u_x|.
  double uy_at_ux_max = 0.0;
};

GradientMaps gradient_maps(const Field2D& u);

using Callback2D = std::function<void(double t, const Field2D& u, const Spectrum1D& slice)>;

/// As the 1D evolve: initial state, every snapshot_stride-th step, final state.
Field2D evolve(const Evolver2DConfig& cfg, const Field2D& u0, const Callback2D& callback, double t0 = 0.0);

void write_checkpoint(const std::filesystem::path& path, const Evolver2D& ev, std::uint64_t config_hash);
Evolver2D restore_checkpoint(const std::filesystem::path& path, const Evolver2DConfig& cfg);

}  // namespace breakup
