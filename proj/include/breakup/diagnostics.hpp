#pragma once

#include <string>
#include <utility>
#include <vector>

#include "breakup/field.hpp"

namespace breakup {

enum class QuantityKind { kEnergy3, kMass2 };

/// Integral of u^3 (energy3) or u^2 (mass2) over the period, as the mean
/// value times the domain length (the k = 0 coefficient of the integrand).
double quantity(const Field1D& u, QuantityKind kind);
double quantity(const Field2D& u, QuantityKind kind);

/// Time series of a conserved quantity and its relative drift.
class ConservationTrace {
 public:
  explicit ConservationTrace(QuantityKind kind) : kind_(kind) {}

  void record(double t, const Field1D& u);
  void record(double t, const Field2D& u);

  QuantityKind kind() const { return kind_; }
  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& values() const { return q_; }
  /// |1 - Q(t)/Q(0)| for energy3, (m(t) - m(0)) / m(0) for mass2.
  std::vector<double> drift() const;
  double final_drift() const;

 private:
  void push(double t, double q);
  QuantityKind kind_;
  std::vector<double> t_;
  std::vector<double> q_;
};

/// max |u1 - u2|; throws when the grids differ.
double sup_diff(const Field1D& u1, const Field1D& u2);
double sup_diff(const Field2D& u1, const Field2D& u2);

/// log10(diff) = a log10(eps) + b.
struct ScalingFit {
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;
  std::vector<std::pair<double, double>> samples;  // (eps, diff)
  std::vector<double> residuals;                   // in log10 units
  /// |r| >= 0.99.
  bool confirmed = false;
};

/// Needs at least three strictly positive samples.
ScalingFit scaling_regression(const std::vector<std::pair<double, double>>& samples);

/// Delta_E versus the trailing spectral decade. An indicator smaller than the
/// spectral tail is flagged as optimistic: it cannot resolve errors below the
/// truncation level.
struct DriftAssessment {
  double drift = 0.0;
  double trailing = 0.0;
  bool optimistic = false;
};

DriftAssessment assess_drift(double drift, const Spectrum1D& v);

}  // namespace breakup
