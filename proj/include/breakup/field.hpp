#pragma once

#include <vector>

#include "breakup/grid.hpp"

namespace breakup {

struct Field1D {
  Grid1D grid;
  std::vector<double> values;
};

/// Discrete Fourier coefficients of a Field1D, all N modes in FFT order.
///
/// v_j = sum_n u(x_n) exp(-i k_j x_n) with x_n = -pi L + n dx, i.e. the
/// plain DFT sum referenced to the left end of the domain. No dx factor.
struct Spectrum1D {
  Grid1D grid;
  std::vector<Complex> coeffs;
};

/// Row-major samples, value (i, j) at index i * Ny + j, x_i slow.
struct Field2D {
  Grid2D grid;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * grid.ny() + j]; }
};

/// Half spectrum of a real 2D field: Nx rows of Ny/2+1 nonnegative ky modes.
/// Same phase convention as Spectrum1D along each axis.
struct Spectrum2D {
  Grid2D grid;
  std::vector<Complex> coeffs;

  Complex at(std::size_t ix, std::size_t jy) const { return coeffs[ix * grid.ny_half() + jy]; }
};

}  // namespace breakup
