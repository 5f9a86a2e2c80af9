#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "breakup/grid.hpp"

namespace breakup {

/// Number of threads FFTW may use inside a single transform. Plans created
/// afterwards pick it up; existing plans keep their setting.
void set_fft_threads(int threads);
int fft_threads();

/// Real-to-complex transform of length N in FFTW's native convention:
///   forward:  c_j = sum_n u_n exp(-2 pi i j n / N),  j = 0..N/2
///   inverse:  u_n = (1/N) sum_j c_j exp(2 pi i j n / N)  (Hermitian extension)
/// Plans own aligned work buffers, so instances are not shareable across
/// threads; each evolver keeps its own.
class RealFft1D {
 public:
  explicit RealFft1D(std::size_t n);
  ~RealFft1D();
  RealFft1D(RealFft1D&&) noexcept;
  RealFft1D& operator=(RealFft1D&&) noexcept;
  RealFft1D(const RealFft1D&) = delete;
  RealFft1D& operator=(const RealFft1D&) = delete;

  std::size_t size() const;
  std::size_t half_size() const { return size() / 2 + 1; }
  void forward(std::span<const double> in, std::span<Complex> out);
  void inverse(std::span<const Complex> in, std::span<double> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Row-major Nx x Ny real field to Nx x (Ny/2+1) half spectrum; same
/// conventions as RealFft1D along both axes.
class RealFft2D {
 public:
  RealFft2D(std::size_t nx, std::size_t ny);
  ~RealFft2D();
  RealFft2D(RealFft2D&&) noexcept;
  RealFft2D& operator=(RealFft2D&&) noexcept;
  RealFft2D(const RealFft2D&) = delete;
  RealFft2D& operator=(const RealFft2D&) = delete;

  std::size_t nx() const;
  std::size_t ny() const;
  std::size_t half_size() const { return nx() * (ny() / 2 + 1); }
  void forward(std::span<const double> in, std::span<Complex> out);
  void inverse(std::span<const Complex> in, std::span<double> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace breakup
