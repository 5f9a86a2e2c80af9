#include "breakup/diagnostics.hpp"

#include <cmath>

#include "breakup/evolve1d.hpp"

namespace breakup {

namespace {

double integrate(const std::vector<double>& values, double cell, QuantityKind kind) {
  double s = 0.0;
  for (double u : values) s += kind == QuantityKind::kEnergy3 ? u * u * u : u * u;
  return s * cell;
}

}  // namespace

double quantity(const Field1D& u, QuantityKind kind) { return integrate(u.values, u.grid.dx(), kind); }

double quantity(const Field2D& u, QuantityKind kind) { return integrate(u.values, u.grid.cell_area(), kind); }

void ConservationTrace::push(double t, double q) {
  if (!std::isfinite(q)) throw Error("conservation trace: non-finite quantity");
  t_.push_back(t);
  q_.push_back(q);
}

void ConservationTrace::record(double t, const Field1D& u) { push(t, quantity(u, kind_)); }
void ConservationTrace::record(double t, const Field2D& u) { push(t, quantity(u, kind_)); }

std::vector<double> ConservationTrace::drift() const {
  std::vector<double> d(q_.size(), 0.0);
  if (q_.empty() || q_[0] == 0.0) return d;
  for (std::size_t i = 0; i < q_.size(); ++i) {
    d[i] = kind_ == QuantityKind::kEnergy3 ? std::abs(1.0 - q_[i] / q_[0]) : (q_[i] - q_[0]) / q_[0];
  }
  return d;
}

double ConservationTrace::final_drift() const {
  const auto d = drift();
  return d.empty() ? 0.0 : d.back();
}

double sup_diff(const Field1D& u1, const Field1D& u2) {
  if (!(u1.grid == u2.grid)) throw Error("sup_diff: grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i < u1.values.size(); ++i) m = std::max(m, std::abs(u1.values[i] - u2.values[i]));
  return m;
}

double sup_diff(const Field2D& u1, const Field2D& u2) {
  if (!(u1.grid == u2.grid)) throw Error("sup_diff: grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i < u1.values.size(); ++i) m = std::max(m, std::abs(u1.values[i] - u2.values[i]));
  return m;
}

ScalingFit scaling_regression(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw Error("scaling_regression: need at least 3 samples");
  const double n = static_cast<double>(samples.size());
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [eps, diff] : samples) {
    if (!(eps > 0.0) || !(diff > 0.0)) throw Error("scaling_regression: samples must be positive");
    x.push_back(std::log10(eps));
    y.push_back(std::log10(diff));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error("scaling_regression: all eps values are equal");
  ScalingFit f;
  f.samples = samples;
  f.a = sxy / sxx;
  f.b = my - f.a * mx;
  f.r = syy == 0.0 ? 1.0 : std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) f.residuals.push_back(y[i] - (f.a * x[i] + f.b));
  f.confirmed = std::abs(f.r) >= 0.99;
  return f;
}

DriftAssessment assess_drift(double drift, const Spectrum1D& v) {
  DriftAssessment d;
  d.drift = drift;
  d.trailing = trailing_magnitude(v);
  d.optimistic = std::abs(drift) < d.trailing;
  return d;
}

}  // namespace breakup
