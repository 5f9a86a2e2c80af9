#include "breakup/hopf_exact.hpp"

#include <cmath>
#include <sstream>

namespace breakup {

namespace {

std::string convergence_message(double residual, double x, long iterations) {
  std::ostringstream os;
  os << "hopf_exact: no convergence after " << iterations << " iterations; worst residual "
     << residual << " at x = " << x;
  return os.str();
}

}  // namespace

ConvergenceError::ConvergenceError(double worst_residual, double x_worst, long iterations)
    : Error(convergence_message(worst_residual, x_worst, iterations)),
      worst_residual_(worst_residual),
      x_worst_(x_worst),
      iterations_(iterations) {}

HopfExactResult hopf_exact(const Profile& u0, const Grid1D& grid, double t,
                           const CharacteristicsSolve& options) {
  if (!(options.residual_tol > 0.0) || !(options.relaxation > 0.0) || options.relaxation > 1.0) {
    throw Error("hopf_exact: need residual_tol > 0 and relaxation in (0, 1]");
  }
  const std::size_t n = grid.size();
  const double w = options.relaxation;
  HopfExactResult res;
  res.xi = grid.points();
  std::vector<double> f(n);

  auto residual = [&](std::size_t& worst) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = u0.u(res.xi[i]);
      const double ri = std::abs(6.0 * t * f[i] + res.xi[i] - grid.x(i));
      if (ri > r) {
        r = ri;
        worst = i;
      }
    }
    return r;
  };

  std::size_t worst = 0;
  double r = residual(worst);
  long it = 0;
  while (r > options.residual_tol && it < options.max_iter) {
    for (std::size_t i = 0; i < n; ++i) {
      res.xi[i] = (1.0 - w) * res.xi[i] + w * (grid.x(i) - 6.0 * t * f[i]);
    }
    ++it;
    r = residual(worst);
  }
  if (r > options.residual_tol) {
    if (r > options.relaxed_tol) throw ConvergenceError(r, grid.x(worst), it);
    res.relaxed = true;
  }
  res.iterations = it;
  res.residual = r;
  res.u = Field1D{grid, f};
  return res;
}

CriticalPoint critical_point_analytic(const Profile& u0, double scan_step) {
  if (!(scan_step > 0.0)) throw Error("critical_point_analytic: scan step must be positive");
  auto g = [&](double xi) { return -6.0 * u0.du(xi); };
  const double lo = u0.search_lo;
  const double hi = u0.search_hi;
  const long steps = static_cast<long>(std::ceil((hi - lo) / scan_step));
  double best = -INFINITY;
  double best_xi = lo;
  for (long s = 0; s <= steps; ++s) {
    const double xi = std::min(hi, lo + static_cast<double>(s) * scan_step);
    const double v = g(xi);
    if (v > best) {
      best = v;
      best_xi = xi;
    }
  }
  if (!(best > 0.0)) throw NoBreakup("critical_point_analytic: u0 is nowhere decreasing, no break-up");

  double a = std::max(lo, best_xi - scan_step);
  double b = std::min(hi, best_xi + scan_step);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int i = 0; i < 200 && b - a > 1e-14 * (1.0 + std::abs(best_xi)); ++i) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + phi * (b - a);
      gd = g(d);
    }
  }
  double xi = 0.5 * (a + b);
  if (g(xi) < best) xi = best_xi;
  CriticalPoint cp;
  cp.xi = xi;
  cp.t_c = 1.0 / g(xi);
  cp.x_c = 6.0 * cp.t_c * u0.u(xi) + xi;
  return cp;
}

}  // namespace breakup
