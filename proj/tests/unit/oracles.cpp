#include "oracles.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

namespace oracle {

using breakup::Grid1D;
using breakup::Grid2D;

std::vector<Complex> direct_dft(const Grid1D& grid, const std::vector<double>& u) {
  const std::size_t n = grid.size();
  std::vector<Complex> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += u[i] * std::polar(1.0, -grid.wavenumber(j) * grid.x(i));
    v[j] = s;
  }
  return v;
}

std::vector<double> direct_idft(const Grid1D& grid, const std::vector<Complex>& v) {
  const std::size_t n = grid.size();
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += v[j] * std::polar(1.0, grid.wavenumber(j) * grid.x(i));
    u[i] = s.real() / static_cast<double>(n);
  }
  return u;
}

std::vector<Complex> direct_dft2(const Grid2D& grid, const std::vector<double>& u) {
  const std::size_t nx = grid.nx();
  const std::size_t ny = grid.ny();
  std::vector<Complex> v(nx * ny);
  for (std::size_t jx = 0; jx < nx; ++jx) {
    for (std::size_t jy = 0; jy < ny; ++jy) {
      Complex s = 0.0;
      for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
          const double arg = grid.x().wavenumber(jx) * grid.x().x(ix) + grid.y().wavenumber(jy) * grid.y().x(iy);
          s += u[ix * ny + iy] * std::polar(1.0, -arg);
        }
      }
      v[jx * ny + jy] = s;
    }
  }
  return v;
}

std::vector<double> direct_idft2(const Grid2D& grid, const std::vector<Complex>& v) {
  const std::size_t nx = grid.nx();
  const std::size_t ny = grid.ny();
  std::vector<double> u(nx * ny);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      Complex s = 0.0;
      for (std::size_t jx = 0; jx < nx; ++jx) {
        for (std::size_t jy = 0; jy < ny; ++jy) {
          const double arg = grid.x().wavenumber(jx) * grid.x().x(ix) + grid.y().wavenumber(jy) * grid.y().x(iy);
          s += v[jx * ny + jy] * std::polar(1.0, arg);
        }
      }
      u[ix * ny + iy] = s.real() / static_cast<double>(nx * ny);
    }
  }
  return u;
}

std::array<Complex, 4> phi_series(Complex z) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  const Real zr = z.real();
  const Real zi = z.imag();
  std::array<Complex, 4> out;
  for (int k = 1; k <= 4; ++k) {
    // sum_n z^n / (n + k)!
    Real fact = 1;
    for (int m = 2; m <= k; ++m) fact *= m;
    Real pr = 1, pi = 0;  // z^n
    Real sr = 0, si = 0;
    for (int n = 0; n < 400; ++n) {
      sr += pr / fact;
      si += pi / fact;
      const Real nr = pr * zr - pi * zi;
      const Real ni = pr * zi + pi * zr;
      pr = nr;
      pi = ni;
      fact *= (n + k + 1);
    }
    out[k - 1] = Complex(static_cast<double>(sr), static_cast<double>(si));
  }
  return out;
}

std::vector<Complex> random_hermitian(std::size_t n, std::uint32_t seed, double scale) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<Complex> v(n);
  v[0] = dist(gen);
  v[n / 2] = dist(gen);
  for (std::size_t j = 1; j < n / 2; ++j) {
    v[j] = Complex(dist(gen), dist(gen));
    v[n - j] = std::conj(v[j]);
  }
  return v;
}

breakup::Spectrum1D model_spectrum(const Grid1D& grid, double A, double B, double delta, double C, double alpha) {
  breakup::Spectrum1D v{grid, std::vector<Complex>(grid.size(), 0.0)};
  for (std::size_t j = 1; j < grid.size() / 2; ++j) {
    const double k = grid.wavenumber(j);
    v.coeffs[j] = std::polar(std::exp(A - B * std::log(k) - delta * k), C - alpha * k);
    v.coeffs[grid.size() - j] = std::conj(v.coeffs[j]);
  }
  v.coeffs[0] = std::exp(A);
  return v;
}

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

}  // namespace oracle
