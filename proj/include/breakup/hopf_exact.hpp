#pragma once

#include "breakup/field.hpp"
#include "breakup/initial_data.hpp"

namespace breakup {

/// Options of the relaxed fixed-point iteration
///   xi <- (1 - w) xi + w (x - 6 t u0(xi)),  xi_0 = x,
/// stopped once max |6 t u0(xi) + xi - x| <= residual_tol.
struct CharacteristicsSolve {
  double residual_tol = 1e-13;
  /// Accepted after max_iter when the strict tolerance is out of reach
  /// (the Jacobian degenerates at t = t_c); flagged in the result.
  double relaxed_tol = 1e-10;
  double relaxation = 0.5;
  long max_iter = 100000;
};

struct HopfExactResult {
  Field1D u;
  std::vector<double> xi;
  long iterations = 0;
  double residual = 0.0;
  bool relaxed = false;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double worst_residual, double x_worst, long iterations);
  double worst_residual() const { return worst_residual_; }
  double x_worst() const { return x_worst_; }
  long iterations() const { return iterations_; }

 private:
  double worst_residual_;
  double x_worst_;
  long iterations_;
};

class NoBreakup : public Error {
 public:
  using Error::Error;
};

/// Solution of u_t + 6 u u_x = 0 at time t on the grid points.
HopfExactResult hopf_exact(const Profile& u0, const Grid1D& grid, double t,
                           const CharacteristicsSolve& options = {});

struct CriticalPoint {
  double t_c = 0.0;
  double x_c = 0.0;
  double xi = 0.0;
};

/// t_c = 1 / max(-6 u0'), x_c = 6 t_c u0(xi*) + xi*. The maximum is located by
/// a scan of [search_lo, search_hi] with spacing `scan_step` followed by a
/// golden-section refinement. Throws NoBreakup when u0' >= 0 everywhere.
CriticalPoint critical_point_analytic(const Profile& u0, double scan_step = 1e-3);

}  // namespace breakup
