#pragma once

#include <span>

#include "breakup/field.hpp"

namespace breakup {

/// Throws Error if any sample is NaN or infinite.
Spectrum1D forward_transform(const Field1D& f);
Spectrum2D forward_transform(const Field2D& f);

/// Rejects spectra whose -k and k coefficients are not conjugate to within
/// `hermitian_tol` relative to the largest coefficient.
Field1D inverse_transform(const Spectrum1D& v, double hermitian_tol = 1e-9);
Field2D inverse_transform(const Spectrum2D& v, double hermitian_tol = 1e-9);

/// Multiplies mode j by (i j / L)^order; the Nyquist mode is zeroed for odd orders.
Spectrum1D derivative_x(const Spectrum1D& v, int order);
Spectrum2D derivative_x(const Spectrum2D& v, int order);
Spectrum2D derivative_y(const Spectrum2D& v, int order);

/// Multiplier -i / kx. The kx = 0 plane and the kx Nyquist row are set to zero.
Spectrum2D antiderivative_x(const Spectrum2D& v);

/// 2/3-rule truncation: zeroes every mode with |mode| > N/3 along each axis.
void dealias_two_thirds(Spectrum1D& v);
void dealias_two_thirds(Spectrum2D& v);

/// Spectral quadrature of u^2 from the coefficients: (dx / N) sum |v_j|^2.
double parseval_integral(const Spectrum1D& v);

/// Phase factor between the FFTW convention (origin at the first sample) and
/// the public one (origin at -pi L): (-1)^mode.
inline double origin_phase(long mode) { return (mode % 2 == 0) ? 1.0 : -1.0; }

/// Spectral derivative of real samples in place of a full transform round trip.
std::vector<double> differentiate(const Grid1D& grid, std::span<const double> u, int order);

}  // namespace breakup
