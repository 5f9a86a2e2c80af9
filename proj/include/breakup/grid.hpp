#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace breakup {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Periodic sampling of [-pi L, pi L) with N points.
///
/// Modes are stored in FFT order: index j holds the integer mode j for
/// j < N/2 and j - N otherwise, so the Nyquist mode is -N/2. The physical
/// wavenumber of mode j is j / L.
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(std::size_t n, double half_period);

  std::size_t size() const { return n_; }
  double half_period() const { return half_period_; }
  double length() const { return 2.0 * kPi * half_period_; }
  double dx() const { return length() / static_cast<double>(n_); }
  /// Smallest distance resolvable in Fourier space, 2 pi L / N.
  double resolution() const { return dx(); }
  double x(std::size_t i) const { return -kPi * half_period_ + static_cast<double>(i) * dx(); }
  long mode(std::size_t j) const {
    const long n = static_cast<long>(n_);
    const long jj = static_cast<long>(j);
    return jj < n / 2 ? jj : jj - n;
  }
  double wavenumber(std::size_t j) const { return static_cast<double>(mode(j)) / half_period_; }
  double max_wavenumber() const { return static_cast<double>(n_ / 2) / half_period_; }
  std::size_t nyquist_index() const { return n_ / 2; }

  std::vector<double> points() const;
  std::vector<double> wavenumbers() const;

  bool operator==(const Grid1D&) const = default;

 private:
  std::size_t n_ = 0;
  double half_period_ = 1.0;
};

/// Tensor-product periodic grid; x is the slow (row) index.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(std::size_t nx, std::size_t ny, double lx, double ly) : x_(nx, lx), y_(ny, ly) {}

  const Grid1D& x() const { return x_; }
  const Grid1D& y() const { return y_; }
  std::size_t nx() const { return x_.size(); }
  std::size_t ny() const { return y_.size(); }
  std::size_t size() const { return nx() * ny(); }
  /// Number of stored ky modes of a real-to-complex half spectrum.
  std::size_t ny_half() const { return ny() / 2 + 1; }
  double cell_area() const { return x_.dx() * y_.dx(); }

  bool operator==(const Grid2D&) const = default;

 private:
  Grid1D x_;
  Grid1D y_;
};

std::string describe(const Grid1D& grid);
std::string describe(const Grid2D& grid);

}  // namespace breakup
