#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "breakup/field.hpp"
#include "breakup/phi.hpp"

namespace breakup {

enum class Equation1D { kHopf, kBurgers, kKdV };

/// kAuto: RK4 for Hopf, ETD4 otherwise.
enum class Integrator { kAuto, kRk4, kEtd4 };

Equation1D parse_equation1d(const std::string& name);
std::string to_string(Equation1D eq);

struct Evolver1DConfig {
  Equation1D equation = Equation1D::kHopf;
  double epsilon = 0.0;
  double dt = 1e-4;
  double t_end = 0.0;
  Grid1D grid;
  int snapshot_stride = 1;
  bool dealias = false;
  Integrator integrator = Integrator::kAuto;
};

/// Throws Error unless dt > 0, epsilon >= 0, epsilon == 0 exactly for Hopf,
/// and snapshot_stride >= 1.
void validate(const Evolver1DConfig& cfg);

/// Diagonal linear part: 0 (Hopf), -eps k^2 (Burgers), i eps^2 k^3 (KdV),
/// over the modes 0..N/2.
std::vector<Complex> linear_symbol(const Evolver1DConfig& cfg);

/// Raised when a step produces non-finite values; carries the last finite state.
class NumericalBlowup : public Error {
 public:
  NumericalBlowup(const std::string& what, Field1D last_good, double t_last_good)
      : Error(what), last_good_(std::move(last_good)), t_(t_last_good) {}
  const Field1D& last_good() const { return last_good_; }
  double time() const { return t_; }

 private:
  Field1D last_good_;
  double t_;
};

/// Largest |v| over the trailing 10% of modes (|mode| >= 0.9 N/2).
double trailing_magnitude(const Spectrum1D& v);

/// u_t + 6 u u_x = eps u_xx (Burgers) or u_t + 6 u u_x + eps^2 u_xxx = 0 (KdV);
/// Hopf for eps = 0. The nonlinearity is -3 d_x(u^2), evaluated with the
/// product in physical space. Hopf steps with classical RK4, the others with ETD4.
class Evolver1D {
 public:
  Evolver1D(const Evolver1DConfig& cfg, const Field1D& u0, double t0 = 0.0);
  Evolver1D(const Evolver1DConfig& cfg, const Spectrum1D& v0, double t0 = 0.0);
  ~Evolver1D();
  Evolver1D(Evolver1D&&) noexcept;
  Evolver1D& operator=(Evolver1D&&) noexcept;

  /// One step of the configured dt.
  void step();
  /// One step of size h.
  void step(double h);
  /// Steps of dt until `t`, the last one shortened to land exactly.
  void advance_to(double t);
  void set_dt(double dt);

  double time() const { return t0_ + static_cast<double>(steps_since_rebase_) * cfg_.dt + extra_; }
  long steps() const { return steps_; }
  const Evolver1DConfig& config() const { return cfg_; }
  Field1D field() const;
  Spectrum1D spectrum() const;

  /// Message for every step at which the trailing decade exceeded 1e-10
  /// (only the first occurrence is stored).
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool resolution_ok() const { return resolution_ok_; }

 private:
  struct Impl;
  void guard(const std::vector<Complex>& previous);

  Evolver1DConfig cfg_;
  double t0_;
  long steps_since_rebase_ = 0;
  double extra_ = 0.0;
  long steps_ = 0;
  bool resolution_ok_ = true;
  std::vector<std::string> warnings_;
  std::unique_ptr<Impl> impl_;
};

/// Explicit step functions for tests and one-off use; allocate per call.
Field1D step_rk4_hopf(const Field1D& u, double dt);
Field1D step_etd4(const Field1D& u, const Evolver1DConfig& cfg);

using Callback1D = std::function<void(double t, const Field1D& u, const Spectrum1D& v)>;

/// Runs from (u0, t0) to cfg.t_end. The callback sees the initial state,
/// every snapshot_stride-th step and the final state. On blow-up the last
/// finite state is passed to the callback before the error propagates.
Field1D evolve(const Evolver1DConfig& cfg, const Field1D& u0, const Callback1D& callback, double t0 = 0.0);

void write_checkpoint(const std::filesystem::path& path, const Evolver1D& ev, std::uint64_t config_hash);
/// Restores an evolver from a checkpoint; the spectrum round-trips exactly.
Evolver1D restore_checkpoint(const std::filesystem::path& path, const Evolver1DConfig& cfg);

}  // namespace breakup
