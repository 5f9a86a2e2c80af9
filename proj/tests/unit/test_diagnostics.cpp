#include <doctest.h>

#include <cmath>

#include "breakup/diagnostics.hpp"
#include "breakup/initial_data.hpp"
#include "breakup/spectral.hpp"

using namespace breakup;

TEST_CASE("quantities") {
  const Grid1D g(1 << 12, 5.0);
  CHECK(quantity(initial_data(DataKind::kZero, g), QuantityKind::kMass2) == 0.0);
  const Field1D s = initial_data(DataKind::kSech2, g);
  CHECK(std::abs(quantity(s, QuantityKind::kMass2) - 4.0 / 3.0) < 1e-12);
  CHECK(std::abs(quantity(s, QuantityKind::kEnergy3) - 16.0 / 15.0) < 1e-12);

  Field1D odd{g, std::vector<double>(g.size())};
  for (std::size_t i = 0; i < g.size(); ++i) odd.values[i] = std::sin(3.0 * g.x(i) / 5.0) * std::exp(-g.x(i) * g.x(i));
  CHECK(std::abs(quantity(odd, QuantityKind::kEnergy3)) < 1e-14);

  const Grid2D g2(64, 32, 5.0, 5.0);
  Field2D one{g2, std::vector<double>(g2.size(), 1.0)};
  CHECK(quantity(one, QuantityKind::kMass2) == doctest::Approx(4.0 * kPi * kPi * 25.0).epsilon(1e-14));
}

TEST_CASE("conservation trace") {
  const Grid1D g(64, 1.0);
  Field1D u{g, std::vector<double>(64, 1.0)};
  ConservationTrace e(QuantityKind::kEnergy3);
  ConservationTrace m(QuantityKind::kMass2);
  e.record(0.0, u);
  m.record(0.0, u);
  for (auto& x : u.values) x = 0.9;
  e.record(1.0, u);
  m.record(1.0, u);
  CHECK(e.drift()[0] == 0.0);
  CHECK(m.drift()[0] == 0.0);
  CHECK(std::abs(e.final_drift() - (1.0 - 0.729)) < 1e-14);
  CHECK(std::abs(m.final_drift() - (0.81 - 1.0)) < 1e-14);
  CHECK(m.final_drift() < 0.0);
  CHECK(e.times().size() == 2);
  for (auto& x : u.values) x = NAN;
  CHECK_THROWS_AS(e.record(2.0, u), Error);
}

TEST_CASE("sup_diff is a metric") {
  const Grid1D g(32, 1.0);
  Field1D a{g, std::vector<double>(32)};
  Field1D b{g, std::vector<double>(32)};
  Field1D c{g, std::vector<double>(32)};
  for (std::size_t i = 0; i < 32; ++i) {
    a.values[i] = std::sin(0.3 * i);
    b.values[i] = std::cos(0.7 * i);
    c.values[i] = 0.01 * i;
  }
  CHECK(sup_diff(a, a) == 0.0);
  Field1D shifted = a;
  for (auto& x : shifted.values) x += 0.25;
  CHECK(std::abs(sup_diff(shifted, a) - 0.25) < 1e-15);
  CHECK(sup_diff(a, b) == sup_diff(b, a));
  CHECK(sup_diff(a, c) <= sup_diff(a, b) + sup_diff(b, c));
  CHECK_THROWS_AS(sup_diff(a, Field1D{Grid1D(32, 2.0), std::vector<double>(32)}), Error);
  const Grid2D g2(8, 8, 1.0, 1.0);
  CHECK_THROWS_AS(sup_diff(Field2D{g2, std::vector<double>(64)}, Field2D{Grid2D(8, 16, 1.0, 1.0), std::vector<double>(128)}), Error);
}

TEST_CASE("scaling regression") {
  std::vector<std::pair<double, double>> s;
  for (double e : {0.1, 0.05, 0.025, 0.0125}) s.emplace_back(e, 3.0 * e * e);
  const ScalingFit f = scaling_regression(s);
  CHECK(std::abs(f.a - 2.0) < 1e-12);
  CHECK(std::abs(f.b - std::log10(3.0)) < 1e-12);
  CHECK(std::abs(f.r - 1.0) < 1e-12);
  CHECK(f.confirmed);
  CHECK(f.residuals.size() == 4);
  for (double r : f.residuals) CHECK(std::abs(r) < 1e-12);

  std::vector<std::pair<double, double>> noisy{{0.1, 1.0}, {0.05, 0.1}, {0.025, 2.0}};
  const ScalingFit n = scaling_regression(noisy);
  CHECK(std::abs(n.r) <= 1.0);
  CHECK_FALSE(n.confirmed);

  CHECK_THROWS_AS(scaling_regression({{0.1, 1.0}, {0.05, 0.5}}), Error);
  CHECK_THROWS_AS(scaling_regression({{0.1, 1.0}, {0.05, 0.0}, {0.02, 0.1}}), Error);
  CHECK_THROWS_AS(scaling_regression({{-0.1, 1.0}, {0.05, 0.2}, {0.02, 0.1}}), Error);
}

TEST_CASE("drift assessment flags indicators below the spectral tail") {
  const Grid1D g(64, 1.0);
  Spectrum1D v{g, std::vector<Complex>(64, 0.0)};
  v.coeffs[31] = v.coeffs[33] = 1e-8;
  const DriftAssessment a = assess_drift(1e-12, v);
  CHECK(a.trailing == doctest::Approx(1e-8));
  CHECK(a.optimistic);
  CHECK_FALSE(assess_drift(1e-6, v).optimistic);
  CHECK_FALSE(assess_drift(-1e-6, v).optimistic);
}
