#include "breakup/grid.hpp"

#include <cmath>
#include <sstream>

namespace breakup {

Grid1D::Grid1D(std::size_t n, double half_period) : n_(n), half_period_(half_period) {
  if (n < 8 || n % 2 != 0) {
    throw Error("grid: N must be even and >= 8, got " + std::to_string(n));
  }
  if (!(half_period > 0.0) || !std::isfinite(half_period)) {
    throw Error("grid: L must be positive and finite");
  }
}

std::vector<double> Grid1D::points() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = x(i);
  return out;
}

std::vector<double> Grid1D::wavenumbers() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = wavenumber(j);
  return out;
}

std::string describe(const Grid1D& grid) {
  std::ostringstream os;
  os << "N=" << grid.size() << " L=" << grid.half_period();
  return os.str();
}

std::string describe(const Grid2D& grid) {
  std::ostringstream os;
  os << "Nx=" << grid.nx() << " Ny=" << grid.ny() << " Lx=" << grid.x().half_period()
     << " Ly=" << grid.y().half_period();
  return os.str();
}

}  // namespace breakup
