#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "breakup/diagnostics.hpp"
#include "breakup/evolve1d.hpp"
#include "breakup/hopf_exact.hpp"
#include "breakup/initial_data.hpp"
#include "breakup/spectral.hpp"

using namespace breakup;

namespace {

Evolver1DConfig make_cfg(Equation1D eq, double eps, std::size_t n, double dt) {
  Evolver1DConfig c;
  c.equation = eq;
  c.epsilon = eps;
  c.grid = Grid1D(n, 5.0);
  c.dt = dt;
  return c;
}

Field1D run_to(const Evolver1DConfig& c, const Field1D& u0, double t) {
  Evolver1D ev(c, u0);
  ev.advance_to(t);
  return ev.field();
}

double sup(const Field1D& a, const Field1D& b) { return sup_diff(a, b); }

// Least-squares slope of log(error) against log(dt).
double convergence_order(const Evolver1DConfig& base, const Field1D& u0, double t) {
  Evolver1DConfig ref = base;
  ref.dt = base.dt / 32.0;
  const Field1D exact = run_to(ref, u0, t);
  std::vector<double> x, y;
  for (int level = 0; level < 4; ++level) {
    Evolver1DConfig c = base;
    c.dt = base.dt / std::pow(2.0, level);
    x.push_back(std::log(c.dt));
    y.push_back(std::log(sup(run_to(c, u0, t), exact)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / 4.0;
    my += y[i] / 4.0;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate(make_cfg(Equation1D::kHopf, 0.1, 64, 1e-3)), Error);
  CHECK_THROWS_AS(validate(make_cfg(Equation1D::kKdV, 0.0, 64, 1e-3)), Error);
  CHECK_THROWS_AS(validate(make_cfg(Equation1D::kBurgers, -0.1, 64, 1e-3)), Error);
  CHECK_THROWS_AS(validate(make_cfg(Equation1D::kHopf, 0.0, 64, 0.0)), Error);
  CHECK_NOTHROW(validate(make_cfg(Equation1D::kKdV, 0.01, 64, 1e-3)));
  CHECK(parse_equation1d("burgers") == Equation1D::kBurgers);
  CHECK_THROWS_AS(parse_equation1d("heat"), Error);
}

TEST_CASE("constant data is a fixed point of the Hopf step") {
  const Grid1D g(128, 5.0);
  const Field1D u{g, std::vector<double>(128, 0.7)};
  const Field1D w = run_to(make_cfg(Equation1D::kHopf, 0.0, 128, 1e-2), u, 0.1);
  CHECK(sup(u, w) < 1e-14);
  CHECK(sup(step_rk4_hopf(u, 0.05), u) < 1e-14);
}

TEST_CASE("zero data stays zero for every equation") {
  for (auto [eq, eps] : {std::pair{Equation1D::kHopf, 0.0}, {Equation1D::kBurgers, 0.01}, {Equation1D::kKdV, 0.01}}) {
    const Evolver1DConfig c = make_cfg(eq, eps, 256, 1e-3);
    const Field1D z{c.grid, std::vector<double>(256, 0.0)};
    int calls = 0;
    Evolver1DConfig cc = c;
    cc.t_end = 0.05;
    cc.snapshot_stride = 10;
    evolve(cc, z, [&](double, const Field1D& u, const Spectrum1D&) {
      ++calls;
      for (double x : u.values) CHECK(x == 0.0);
    });
    CHECK(calls == 6);
  }
}

TEST_CASE("mean is conserved") {
  const Grid1D g(1024, 5.0);
  const Field1D u0 = initial_data(DataKind::kSech2, g);
  const double m0 = forward_transform(u0).coeffs[0].real();
  for (auto [eq, eps] : {std::pair{Equation1D::kHopf, 0.0}, {Equation1D::kKdV, 0.1}, {Equation1D::kBurgers, 0.1}}) {
    const Field1D u = run_to(make_cfg(eq, eps, 1024, 1e-3), u0, 0.1);
    CHECK(std::abs(forward_transform(u).coeffs[0].real() - m0) <= 1e-13 * std::abs(m0));
  }
}

TEST_CASE("fourth-order temporal self-convergence") {
  const Grid1D g(256, 5.0);
  const Field1D u0 = initial_data(DataKind::kSech2, g);
  const double hopf = convergence_order(make_cfg(Equation1D::kHopf, 0.0, 256, 0.01), u0, 0.1);
  const double kdv = convergence_order(make_cfg(Equation1D::kKdV, 0.1, 256, 0.01), u0, 0.1);
  const double burgers = convergence_order(make_cfg(Equation1D::kBurgers, 0.1, 256, 0.01), u0, 0.1);
  MESSAGE("orders: hopf " << hopf << ", kdv " << kdv << ", burgers " << burgers);
  for (double p : {hopf, kdv, burgers}) {
    CHECK(p >= 3.7);
    CHECK(p <= 4.3);
  }
}

TEST_CASE("ETD4 with a vanishing symbol is RK4") {
  const Grid1D g(512, 5.0);
  const Field1D u0 = initial_data(DataKind::kSech2, g);
  Evolver1DConfig etd = make_cfg(Equation1D::kHopf, 0.0, 512, 1e-3);
  etd.integrator = Integrator::kEtd4;
  Evolver1DConfig rk = etd;
  rk.integrator = Integrator::kRk4;
  CHECK(sup(run_to(etd, u0, 0.05), run_to(rk, u0, 0.05)) < 1e-14);
  CHECK(sup(step_etd4(u0, etd), step_rk4_hopf(u0, 1e-3)) < 1e-15);
}

TEST_CASE("single-step helpers agree with the evolver") {
  const Grid1D g(256, 5.0);
  const Field1D u0 = initial_data(DataKind::kSech2, g);
  const Evolver1DConfig c = make_cfg(Equation1D::kKdV, 0.05, 256, 2e-3);
  Evolver1D ev(c, u0);
  ev.step();
  CHECK(sup(ev.field(), step_etd4(u0, c)) == 0.0);
}

TEST_CASE("time bookkeeping") {
  const Grid1D g(128, 5.0);
  Evolver1D ev(make_cfg(Equation1D::kHopf, 0.0, 128, 3e-3), initial_data(DataKind::kSech2, g), 0.01);
  ev.advance_to(0.1);
  CHECK(std::abs(ev.time() - 0.1) < 1e-15);
  ev.set_dt(1e-3);
  CHECK(ev.config().dt == 1e-3);
  for (int i = 0; i < 10; ++i) ev.step();
  CHECK(std::abs(ev.time() - 0.11) < 1e-15);
  CHECK(ev.steps() == 40);
  CHECK_THROWS_AS(ev.advance_to(0.05), Error);
}

TEST_CASE("checkpoint restart is equivalent to a direct run") {
  const Grid1D g(1024, 5.0);
  const Field1D u0 = initial_data(DataKind::kSech2, g);
  for (auto [eq, eps] : {std::pair{Equation1D::kHopf, 0.0}, {Equation1D::kKdV, 0.05}}) {
    const Evolver1DConfig c = make_cfg(eq, eps, 1024, 1e-3);
    const Field1D direct = run_to(c, u0, 0.15);
    Evolver1D first(c, u0);
    first.advance_to(0.08);
    const auto path = std::filesystem::temp_directory_path() / "breakup_unit_ckpt1d.bin";
    write_checkpoint(path, first, 42);
    Evolver1D second = restore_checkpoint(path, c);
    CHECK(second.time() == first.time());
    second.advance_to(0.15);
    CHECK(sup(second.field(), direct) <= 1e-12);
  }
}

TEST_CASE("checkpoint on a different grid is rejected") {
  const Evolver1DConfig c = make_cfg(Equation1D::kHopf, 0.0, 128, 1e-3);
  Evolver1D ev(c, initial_data(DataKind::kSech2, c.grid));
  const auto path = std::filesystem::temp_directory_path() / "breakup_unit_ckpt_bad.bin";
  write_checkpoint(path, ev, 1);
  CHECK_THROWS_AS(restore_checkpoint(path, make_cfg(Equation1D::kHopf, 0.0, 256, 1e-3)), Error);
}

TEST_CASE("blow-up keeps the last good state") {
  const Evolver1DConfig c = make_cfg(Equation1D::kHopf, 0.0, 64, 2.0);
  const Field1D u0 = initial_data(DataKind::kSech2, c.grid);
  Evolver1D ev(c, u0);
  bool thrown = false;
  try {
    for (int i = 0; i < 200; ++i) ev.step();
  } catch (const NumericalBlowup& e) {
    thrown = true;
    for (double x : e.last_good().values) CHECK(std::isfinite(x));
    CHECK(e.time() == ev.time());
  }
  CHECK(thrown);
}

TEST_CASE("evolve flushes the last good state on blow-up") {
  Evolver1DConfig c = make_cfg(Equation1D::kHopf, 0.0, 64, 2.0);
  c.t_end = 400.0;
  c.snapshot_stride = 1000;
  int calls = 0;
  bool finite = true;
  CHECK_THROWS_AS(evolve(c, initial_data(DataKind::kSech2, c.grid),
                         [&](double, const Field1D& u, const Spectrum1D&) {
                           ++calls;
                           for (double x : u.values) finite = finite && std::isfinite(x);
                         }),
                  NumericalBlowup);
  CHECK(calls == 2);
  CHECK(finite);
}

TEST_CASE("under-resolved run trips the resolution guard once") {
  const Evolver1DConfig c = make_cfg(Equation1D::kHopf, 0.0, 256, 1e-3);
  Evolver1D ev(c, initial_data(DataKind::kSech2, c.grid));
  CHECK(ev.resolution_ok());
  ev.advance_to(0.21);
  CHECK_FALSE(ev.resolution_ok());
  CHECK(ev.warnings().size() == 1);
}

TEST_CASE("Hopf spectral run against the exact solution at dt = 7.2e-5") {
  const Evolver1DConfig c = make_cfg(Equation1D::kHopf, 0.0, 1 << 14, 7.2e-5);
  const Field1D u0 = initial_data(DataKind::kSech2, c.grid);
  ConservationTrace energy(QuantityKind::kEnergy3);
  energy.record(0.0, u0);
  Evolver1D ev(c, u0);
  ev.advance_to(0.18);
  energy.record(ev.time(), ev.field());
  const double err = sup(ev.field(), hopf_exact(sech2_profile(), c.grid, 0.18).u);
  MESSAGE("sup error " << err << " (reference 6.4e-11), energy drift " << energy.final_drift());
  CHECK(err < 1e-10);
  CHECK(err > 1e-11);
  // the drift indicator is two or more orders below the true error
  CHECK(energy.final_drift() < 1e-2 * err);
}

TEST_CASE("KdV dispersive zone stays bounded shortly after break-up") {
  const Evolver1DConfig c = make_cfg(Equation1D::kKdV, 0.01, 1 << 14, 1e-4);
  const Field1D u = run_to(c, initial_data(DataKind::kSech2, c.grid), 0.23);
  const double m = *std::max_element(u.values.begin(), u.values.end());
  CHECK(m <= 1.5);
  CHECK(trailing_magnitude(forward_transform(u)) < 1e-10);
}
