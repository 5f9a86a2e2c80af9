#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "breakup/hopf_exact.hpp"
#include "breakup/initial_data.hpp"
#include "breakup/spectral.hpp"

using namespace breakup;

namespace {

const double kTc = std::sqrt(3.0) / 8.0;
const double kXc = std::sqrt(3.0) / 2.0 - std::log((std::sqrt(3.0) - 1.0) / std::sqrt(2.0));

double max_residual(const Profile& p, const HopfExactResult& r, const Grid1D& g, double t) {
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(6.0 * t * p.u(r.xi[i]) + r.xi[i] - g.x(i)));
  return m;
}

}  // namespace

TEST_CASE("t = 0 returns the initial profile") {
  const Grid1D g(256, 5.0);
  const Profile p = sech2_profile();
  const HopfExactResult r = hopf_exact(p, g, 0.0);
  const Field1D u0 = initial_data(DataKind::kSech2, g);
  CHECK(r.u.values == u0.values);
}

TEST_CASE("characteristics residual below tolerance") {
  const Grid1D g(1 << 12, 5.0);
  const Profile p = sech2_profile();
  for (double t : {0.05, 0.18, 0.99 * kTc}) {
    const HopfExactResult r = hopf_exact(p, g, t);
    CHECK_FALSE(r.relaxed);
    CHECK(r.residual <= 1e-13);
    CHECK(max_residual(p, r, g, t) <= 1e-13);
  }
}

TEST_CASE("iteration count grows toward the critical time") {
  const Grid1D g(1 << 10, 5.0);
  const Profile p = sech2_profile();
  long previous = 0;
  for (double t : {0.1 * kTc, 0.3 * kTc, 0.6 * kTc, 0.9 * kTc}) {
    const long it = hopf_exact(p, g, t).iterations;
    CHECK(it >= previous);
    previous = it;
  }
  // close to t_c the count depends on how near a grid point sits to x_c
  CHECK(hopf_exact(p, g, 0.99 * kTc).iterations > hopf_exact(p, g, 0.5 * kTc).iterations);
}

TEST_CASE("at the critical time the relaxed tolerance applies") {
  const Grid1D g(1 << 12, 5.0);
  const HopfExactResult r = hopf_exact(sech2_profile(), g, kTc);
  CHECK(r.residual <= 1e-10);
}

TEST_CASE("non-convergence carries the worst residual") {
  const Grid1D g(256, 5.0);
  CharacteristicsSolve opts;
  opts.max_iter = 3;
  try {
    hopf_exact(sech2_profile(), g, 0.2, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.worst_residual() > 1e-10);
    CHECK(e.iterations() == 3);
    CHECK(std::abs(e.x_worst()) <= kPi * 5.0);
  }
}

TEST_CASE("range of u0 is preserved") {
  const Grid1D g(1 << 12, 5.0);
  const Field1D u0 = initial_data(DataKind::kSech2, g);
  // the crest u = 1 travels to x = 6t; land it on a grid point
  const double t = g.x(static_cast<std::size_t>(std::lround((1.08 + kPi * 5.0) / g.dx()))) / 6.0;
  const HopfExactResult r = hopf_exact(sech2_profile(), g, t);
  const auto [lo0, hi0] = std::minmax_element(u0.values.begin(), u0.values.end());
  const auto [lo, hi] = std::minmax_element(r.u.values.begin(), r.u.values.end());
  CHECK(std::abs(*hi - *hi0) < 1e-12);
  CHECK(*lo >= *lo0 - 1e-12);
  for (double x : r.u.values) CHECK((x >= *lo0 - 1e-12 && x <= *hi0 + 1e-12));
}

TEST_CASE("steepest slope grows monotonically before break-up") {
  const Grid1D g(1 << 13, 5.0);
  const Profile p = sech2_profile();
  double previous = 0.0;
  for (double t : {0.0, 0.05, 0.1, 0.15, 0.18, 0.2}) {
    const Field1D u = hopf_exact(p, g, t).u;
    const auto du = differentiate(g, u.values, 1);
    double m = 0.0;
    for (double d : du) m = std::max(m, std::abs(d));
    CHECK(m >= previous);
    previous = m;
  }
}

TEST_CASE("sech2 critical point") {
  const CriticalPoint cp = critical_point_analytic(sech2_profile());
  CHECK(std::abs(cp.t_c - kTc) < 1e-12);
  CHECK(std::abs(cp.x_c - kXc) < 1e-9);
  CHECK(cp.t_c == doctest::Approx(0.2165).epsilon(1e-3));
  CHECK(cp.x_c == doctest::Approx(1.5245).epsilon(1e-4));
}

TEST_CASE("linear profile breaks at 1/6") {
  const CriticalPoint cp = critical_point_analytic(linear_profile(-1.0, 3.0));
  CHECK(std::abs(cp.t_c - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("increasing profile never breaks") {
  CHECK_THROWS_AS(critical_point_analytic(linear_profile(1.0, 3.0)), NoBreakup);
}

TEST_CASE("gaussian critical time against a dense scan") {
  const Profile p = gaussian_profile();
  double best = 0.0;
  double arg = 0.0;
  for (long i = 0; i <= 20000000; ++i) {
    const double x = -10.0 + 1e-6 * static_cast<double>(i);
    const double s = -6.0 * (-2.0 * x * std::exp(-x * x));
    if (s > best) {
      best = s;
      arg = x;
    }
  }
  // Local refinement of the scan maximum by Newton on the slope derivative.
  for (int it = 0; it < 20; ++it) {
    const double e = std::exp(-arg * arg);
    const double d1 = 12.0 * e * (1.0 - 2.0 * arg * arg);
    const double d2 = 12.0 * e * (-6.0 * arg + 4.0 * arg * arg * arg);
    arg -= d1 / d2;
  }
  const double t_ref = 1.0 / (12.0 * arg * std::exp(-arg * arg));
  CHECK(std::abs(1.0 / best - t_ref) < 1e-10);
  const CriticalPoint cp = critical_point_analytic(p);
  CHECK(std::abs(cp.t_c - t_ref) < 1e-12);
  CHECK(std::abs(cp.xi - arg) < 1e-6);
}
