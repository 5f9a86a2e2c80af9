#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <array>
#include <cstdint>
#include <vector>

#include "breakup/field.hpp"

namespace oracle {

using breakup::Complex;

/// Direct O(N^2) sum v_j = sum_n u_n exp(-i k_j x_n), FFT order.
std::vector<Complex> direct_dft(const breakup::Grid1D& grid, const std::vector<double>& u);
/// Direct inverse, u_n = (1/N) sum_j v_j exp(i k_j x_n), real part.
std::vector<double> direct_idft(const breakup::Grid1D& grid, const std::vector<Complex>& v);

/// Direct O(N^4) 2D sum over the full (Nx x Ny) mode lattice, row-major.
std::vector<Complex> direct_dft2(const breakup::Grid2D& grid, const std::vector<double>& u);
std::vector<double> direct_idft2(const breakup::Grid2D& grid, const std::vector<Complex>& v);

/// phi_1..phi_4 from the Taylor series in 50-digit arithmetic.
std::array<Complex, 4> phi_series(Complex z);

/// Hermitian spectrum of a random real field with entries of order `scale`.
std::vector<Complex> random_hermitian(std::size_t n, std::uint32_t seed, double scale = 1.0);

/// exp(A - B ln k - delta k) exp(i (C - alpha k)) on positive modes, conjugate on negative ones.
breakup::Spectrum1D model_spectrum(const breakup::Grid1D& grid, double A, double B, double delta, double C,
                                   double alpha);

double sech2(double x);

}  // namespace oracle
