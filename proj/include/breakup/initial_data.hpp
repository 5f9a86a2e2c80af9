#pragma once

#include <functional>
#include <string>
#include <vector>

#include "breakup/field.hpp"

namespace breakup {

enum class DataKind { kZero, kSech2, kGaussian, kLineGaussian, kDerivSech2Radial };

/// Accepts "zero", "sech2_1d", "gaussian_1d", "line_gaussian", "deriv_sech2_radial".
DataKind parse_data_kind(const std::string& name);
std::string to_string(DataKind kind);
bool is_2d(DataKind kind);

/// Samples a kind on the grid. For the localized 2D families, boundary
/// values above 1e-16 append a message to `warnings` when it is non-null.
Field1D initial_data(DataKind kind, const Grid1D& grid, std::vector<std::string>* warnings = nullptr);

/// line_gaussian:       exp(-(x - cos(y / Ly))^2)
/// deriv_sech2_radial:  -d/dx sech^2(R), R = sqrt(x^2 + y^2)
/// Both satisfy the zero-x-mean constraint on d_yy u.
Field2D initial_data(DataKind kind, const Grid2D& grid, std::vector<std::string>* warnings = nullptr);

/// Smooth scalar profile with derivatives, used by the characteristics solver.
struct Profile {
  std::string name;
  std::function<double(double)> u;
  std::function<double(double)> du;
  std::function<double(double)> d2u;
  /// Interval searched for the steepest descent.
  double search_lo = -10.0;
  double search_hi = 10.0;
};

Profile sech2_profile();
Profile gaussian_profile();
Profile linear_profile(double slope, double half_width);
/// Profile of a 1D kind; kZero gives the zero profile.
Profile profile_for(DataKind kind);

}  // namespace breakup
