#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "breakup/diagnostics.hpp"
#include "breakup/evolve1d.hpp"
#include "breakup/evolve2d.hpp"
#include "breakup/initial_data.hpp"
#include "breakup/spectral.hpp"

using namespace breakup;

namespace {

Evolver2DConfig make_cfg(int lambda, double eps, std::size_t nx, std::size_t ny, double dt) {
  Evolver2DConfig c;
  c.lambda = lambda;
  c.epsilon = eps;
  c.grid = Grid2D(nx, ny, 5.0, 5.0);
  c.dt = dt;
  return c;
}

Field2D y_independent(const Grid2D& g, const Field1D& row) {
  Field2D u{g, std::vector<double>(g.size())};
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j < g.ny(); ++j) u.values[i * g.ny() + j] = row.values[i];
  }
  return u;
}

Field2D run_to(const Evolver2DConfig& c, const Field2D& u0, double t) {
  Evolver2D ev(c, u0);
  ev.advance_to(t);
  return ev.field();
}

}  // namespace

TEST_CASE("2D config validation") {
  CHECK_THROWS_AS(validate(make_cfg(0, 0.0, 64, 32, 1e-3)), Error);
  CHECK_THROWS_AS(validate(make_cfg(-1, -0.1, 64, 32, 1e-3)), Error);
  CHECK_THROWS_AS(validate(make_cfg(1, 0.0, 64, 32, -1e-3)), Error);
  CHECK_NOTHROW(validate(make_cfg(1, 0.1, 64, 32, 1e-3)));
  CHECK(parse_slice_kind("ky_zero") == SliceKind::kKyZero);
  CHECK_THROWS_AS(parse_slice_kind("diagonal"), Error);
}

TEST_CASE("y-independent data reduces to the Hopf right-hand side") {
  const Grid1D gx(128, 5.0);
  const Field1D row = initial_data(DataKind::kSech2, gx);
  const Grid2D g(128, 8, 5.0, 5.0);
  const Field2D rhs = rhs_dkp(y_independent(g, row), -1);
  const auto ux = differentiate(gx, row.values, 1);
  double err = 0.0;
  for (std::size_t i = 0; i < 128; ++i) {
    for (std::size_t j = 0; j < 8; ++j) err = std::max(err, std::abs(rhs.at(i, j) + 6.0 * row.values[i] * ux[i]));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("nonlocal term on a single harmonic") {
  const double lx = 5.0;
  const double ly = 3.0;
  const Grid2D g(32, 16, lx, ly);
  Field2D u{g, std::vector<double>(g.size())};
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j < g.ny(); ++j) {
      u.values[i * g.ny() + j] = std::sin(g.x().x(i) / lx) * std::cos(g.y().x(j) / ly);
    }
  }
  for (int lambda : {-1, 1}) {
    const Field2D rhs = rhs_dkp(u, lambda);
    double err = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
      for (std::size_t j = 0; j < g.ny(); ++j) {
        const double x = g.x().x(i);
        const double y = g.y().x(j);
        const double local = -6.0 * std::sin(x / lx) * std::cos(x / lx) * std::pow(std::cos(y / ly), 2) / lx;
        const double nonlocal = -lambda * lx / (ly * ly) * std::cos(x / lx) * std::cos(y / ly);
        err = std::max(err, std::abs(rhs.at(i, j) - local - nonlocal));
      }
    }
    CHECK(err < 1e-12);
  }
}

TEST_CASE("dispersionless y-independent evolution matches the 1D Hopf run") {
  const Grid1D gx(256, 5.0);
  const Field1D row = initial_data(DataKind::kSech2, gx);
  Evolver1DConfig c1;
  c1.grid = gx;
  c1.dt = 1e-3;
  Evolver1D ev1(c1, row);
  ev1.advance_to(0.05);
  const Evolver2DConfig c2 = make_cfg(-1, 0.0, 256, 8, 1e-3);
  const Field2D u2 = run_to(c2, y_independent(c2.grid, row), 0.05);
  const Field1D u1 = ev1.field();
  double err = 0.0;
  for (std::size_t i = 0; i < 256; ++i) {
    for (std::size_t j = 0; j < 8; ++j) err = std::max(err, std::abs(u2.at(i, j) - u1.values[i]));
  }
  CHECK(err < 1e-12);
  CHECK(sup_diff(Field2D(step_etd4_kp(y_independent(c2.grid, row), c2)), y_independent(c2.grid, step_rk4_hopf(row, 1e-3))) < 1e-13);
}

TEST_CASE("constraint is preserved during evolution") {
  for (DataKind kind : {DataKind::kLineGaussian, DataKind::kDerivSech2Radial}) {
    for (double eps : {0.0, 0.1}) {
      Evolver2DConfig c = make_cfg(-1, eps, 128, 64, 1e-3);
      Evolver2D ev(c, initial_data(kind, c.grid));
      CHECK(constraint_residual(ev.spectrum()) < 1e-10);
      ev.advance_to(0.05);
      CHECK(constraint_residual(ev.spectrum()) < 1e-10);
    }
  }
}

TEST_CASE("data even in y stays even in y") {
  const Evolver2DConfig c = make_cfg(-1, 0.0, 128, 64, 1e-3);
  const Field2D u = run_to(c, initial_data(DataKind::kLineGaussian, c.grid), 0.08);
  const std::size_t ny = c.grid.ny();
  double err = 0.0;
  for (std::size_t i = 0; i < c.grid.nx(); ++i) {
    for (std::size_t j = 1; j < ny; ++j) err = std::max(err, std::abs(u.at(i, j) - u.at(i, ny - j)));
  }
  CHECK(err < 1e-11);
}

TEST_CASE("dKP II mirrors dKP I for data odd in x") {
  const Evolver2DConfig c1 = make_cfg(-1, 0.0, 128, 64, 1e-3);
  const Evolver2DConfig c2 = make_cfg(1, 0.0, 128, 64, 1e-3);
  const Field2D u0 = initial_data(DataKind::kDerivSech2Radial, c1.grid);
  const Field2D a = run_to(c1, u0, 0.05);
  const Field2D b = run_to(c2, u0, 0.05);
  const std::size_t nx = c1.grid.nx();
  double err = 0.0;
  for (std::size_t i = 1; i < nx; ++i) {
    for (std::size_t j = 0; j < c1.grid.ny(); ++j) err = std::max(err, std::abs(b.at(i, j) + a.at(nx - i, j)));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("gradient maps on radially symmetric data") {
  const Grid2D g(128, 128, 2.0, 2.0);
  Field2D u{g, std::vector<double>(g.size())};
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j < g.ny(); ++j) {
      const double x = g.x().x(i);
      const double y = g.y().x(j);
      u.values[i * g.ny() + j] = std::exp(-(x * x + y * y));
    }
  }
  const GradientMaps m = gradient_maps(u);
  CHECK(std::abs(m.ux_argmax_y) <= g.y().dx() + 1e-12);
  CHECK(std::abs(std::abs(m.ux_argmax_x) - std::sqrt(0.5)) <= g.x().dx());
  CHECK(m.ux_max == doctest::Approx(std::sqrt(2.0) * std::exp(-0.5)).epsilon(1e-3));
  CHECK(std::abs(m.uy_at_ux_max) < 1e-12);
  CHECK(m.abs_ux.values.size() == g.size());
}

TEST_CASE("tracker slices") {
  const Grid1D gx(64, 5.0);
  const Field1D row = initial_data(DataKind::kSech2, gx);
  const Grid2D g(64, 16, 5.0, 5.0);
  const Field2D u = y_independent(g, row);
  const Spectrum1D ref = forward_transform(row);
  const Spectrum1D cut = tracker_slice(u, SliceKind::kYZeroCut);
  const Spectrum1D mode = tracker_slice(u, SliceKind::kKyZero);
  for (std::size_t j = 0; j < 64; ++j) {
    CHECK(std::abs(cut.coeffs[j] - ref.coeffs[j]) < 1e-12);
    CHECK(std::abs(mode.coeffs[j] - 16.0 * ref.coeffs[j]) < 1e-10);
  }
}

TEST_CASE("2D checkpoint restart is equivalent to a direct run") {
  const Evolver2DConfig c = make_cfg(-1, 0.1, 128, 64, 1e-3);
  const Field2D u0 = initial_data(DataKind::kLineGaussian, c.grid);
  const Field2D direct = run_to(c, u0, 0.04);
  Evolver2D first(c, u0);
  first.advance_to(0.02);
  const auto path = std::filesystem::temp_directory_path() / "breakup_unit_ckpt2d.bin";
  write_checkpoint(path, first, 7);
  Evolver2D second = restore_checkpoint(path, c);
  second.advance_to(0.04);
  CHECK(sup_diff(second.field(), direct) <= 1e-12);
}

TEST_CASE("2D evolve emits initial, strided and final states") {
  Evolver2DConfig c = make_cfg(-1, 0.0, 64, 32, 1e-3);
  c.t_end = 0.01;
  c.snapshot_stride = 4;
  std::vector<double> times;
  evolve(c, initial_data(DataKind::kLineGaussian, c.grid),
         [&](double t, const Field2D&, const Spectrum1D& s) {
           times.push_back(t);
           CHECK(s.grid == c.grid.x());
         });
  REQUIRE(times.size() == 4);
  CHECK(times.front() == 0.0);
  CHECK(std::abs(times.back() - 0.01) < 1e-15);
}
