#include "breakup/initial_data.hpp"

#include <cmath>
#include <sstream>

namespace breakup {

namespace {

double sech2(double x) {
  const double c = std::cosh(x);
  return std::isfinite(c) ? 1.0 / (c * c) : 0.0;
}

double radial_profile(double x, double y) {
  const double r = std::hypot(x, y);
  // tanh(R)/R -> 1 at the origin
  const double t_over_r = r < 1e-8 ? 1.0 - r * r / 3.0 : std::tanh(r) / r;
  return 2.0 * sech2(r) * t_over_r * x;
}

void check_boundary(double value, const std::string& where, std::vector<std::string>* warnings) {
  if (warnings != nullptr && std::abs(value) > 1e-16) {
    std::ostringstream os;
    os << "initial data: |u| = " << std::abs(value) << " at " << where
       << " exceeds 1e-16; enlarge the domain";
    warnings->push_back(os.str());
  }
}

}  // namespace

DataKind parse_data_kind(const std::string& name) {
  if (name == "zero") return DataKind::kZero;
  if (name == "sech2_1d" || name == "sech2") return DataKind::kSech2;
  if (name == "gaussian_1d" || name == "gaussian") return DataKind::kGaussian;
  if (name == "line_gaussian") return DataKind::kLineGaussian;
  if (name == "deriv_sech2_radial") return DataKind::kDerivSech2Radial;
  throw Error("unknown initial data kind '" + name + "'");
}

std::string to_string(DataKind kind) {
  switch (kind) {
    case DataKind::kZero: return "zero";
    case DataKind::kSech2: return "sech2_1d";
    case DataKind::kGaussian: return "gaussian_1d";
    case DataKind::kLineGaussian: return "line_gaussian";
    case DataKind::kDerivSech2Radial: return "deriv_sech2_radial";
  }
  return "?";
}

bool is_2d(DataKind kind) {
  return kind == DataKind::kLineGaussian || kind == DataKind::kDerivSech2Radial;
}

Field1D initial_data(DataKind kind, const Grid1D& grid, std::vector<std::string>* warnings) {
  if (is_2d(kind)) throw Error("initial data '" + to_string(kind) + "' needs a 2D grid");
  const Profile p = profile_for(kind);
  Field1D f{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) f.values[i] = p.u(grid.x(i));
  (void)warnings;
  return f;
}

Field2D initial_data(DataKind kind, const Grid2D& grid, std::vector<std::string>* warnings) {
  Field2D f{grid, std::vector<double>(grid.size(), 0.0)};
  const double ly = grid.y().half_period();
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double x = grid.x().x(i);
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      const double y = grid.y().x(j);
      double v = 0.0;
      switch (kind) {
        case DataKind::kZero: break;
        case DataKind::kLineGaussian: {
          const double s = x - std::cos(y / ly);
          v = std::exp(-s * s);
          break;
        }
        case DataKind::kDerivSech2Radial: v = radial_profile(x, y); break;
        default: throw Error("initial data '" + to_string(kind) + "' is one-dimensional");
      }
      f.values[i * grid.ny() + j] = v;
    }
  }
  if (kind == DataKind::kLineGaussian) {
    double edge = 0.0;
    for (std::size_t j = 0; j < grid.ny(); ++j) edge = std::max(edge, std::abs(f.at(0, j)));
    check_boundary(edge, "x = -pi Lx", warnings);
  } else if (kind == DataKind::kDerivSech2Radial) {
    double edge = 0.0;
    for (std::size_t j = 0; j < grid.ny(); ++j) edge = std::max(edge, std::abs(f.at(0, j)));
    for (std::size_t i = 0; i < grid.nx(); ++i) edge = std::max(edge, std::abs(f.at(i, 0)));
    check_boundary(edge, "domain boundary", warnings);
  }
  return f;
}

Profile sech2_profile() {
  Profile p;
  p.name = "sech2";
  p.u = [](double x) { return sech2(x); };
  p.du = [](double x) { return -2.0 * sech2(x) * std::tanh(x); };
  p.d2u = [](double x) {
    const double s = sech2(x);
    const double t = std::tanh(x);
    return 4.0 * s * t * t - 2.0 * s * s;
  };
  return p;
}

Profile gaussian_profile() {
  Profile p;
  p.name = "gaussian";
  p.u = [](double x) { return std::exp(-x * x); };
  p.du = [](double x) { return -2.0 * x * std::exp(-x * x); };
  p.d2u = [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); };
  return p;
}

Profile linear_profile(double slope, double half_width) {
  Profile p;
  p.name = "linear";
  p.u = [slope](double x) { return slope * x; };
  p.du = [slope](double) { return slope; };
  p.d2u = [](double) { return 0.0; };
  p.search_lo = -half_width;
  p.search_hi = half_width;
  return p;
}

Profile profile_for(DataKind kind) {
  switch (kind) {
    case DataKind::kSech2: return sech2_profile();
    case DataKind::kGaussian: return gaussian_profile();
    case DataKind::kZero: return linear_profile(0.0, 1.0);
    default: throw Error("no 1D profile for '" + to_string(kind) + "'");
  }
}

}  // namespace breakup
