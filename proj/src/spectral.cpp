#include "breakup/spectral.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <utility>

#include "breakup/fft.hpp"

namespace breakup {

namespace {

RealFft1D& plan_1d(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<RealFft1D>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft1D>(n);
  return *slot;
}

RealFft2D& plan_2d(std::size_t nx, std::size_t ny) {
  thread_local std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<RealFft2D>> cache;
  auto& slot = cache[{nx, ny}];
  if (!slot) slot = std::make_unique<RealFft2D>(nx, ny);
  return *slot;
}

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error("forward_transform: non-finite sample at index " + std::to_string(i));
    }
  }
}

Complex ipow(Complex z, int order) {
  Complex r = 1.0;
  for (int i = 0; i < order; ++i) r *= z;
  return r;
}

void check_order(int order) {
  if (order < 1 || order > 3) throw Error("derivative: order must be 1, 2 or 3");
}

double max_abs(const std::vector<Complex>& c) {
  double m = 0.0;
  for (const auto& z : c) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

Spectrum1D forward_transform(const Field1D& f) {
  const std::size_t n = f.grid.size();
  if (f.values.size() != n) throw Error("forward_transform: field length does not match grid");
  require_finite(f.values);
  std::vector<Complex> half(n / 2 + 1);
  plan_1d(n).forward(f.values, half);
  Spectrum1D out{f.grid, std::vector<Complex>(n)};
  for (std::size_t j = 0; j <= n / 2; ++j) {
    out.coeffs[j] = origin_phase(static_cast<long>(j)) * half[j];
  }
  for (std::size_t j = n / 2 + 1; j < n; ++j) out.coeffs[j] = std::conj(out.coeffs[n - j]);
  return out;
}

Field1D inverse_transform(const Spectrum1D& v, double hermitian_tol) {
  const std::size_t n = v.grid.size();
  if (v.coeffs.size() != n) throw Error("inverse_transform: spectrum length does not match grid");
  const double scale = std::max(max_abs(v.coeffs), 1e-300);
  for (std::size_t j = 0; j <= n / 2; ++j) {
    const Complex a = v.coeffs[j];
    const Complex b = v.coeffs[(n - j) % n];
    if (std::abs(a - std::conj(b)) > hermitian_tol * scale) {
      throw Error("inverse_transform: spectrum is not Hermitian at mode " + std::to_string(j));
    }
  }
  std::vector<Complex> half(n / 2 + 1);
  for (std::size_t j = 0; j <= n / 2; ++j) half[j] = origin_phase(static_cast<long>(j)) * v.coeffs[j];
  Field1D out{v.grid, std::vector<double>(n)};
  plan_1d(n).inverse(half, out.values);
  return out;
}

Spectrum2D forward_transform(const Field2D& f) {
  const Grid2D& g = f.grid;
  if (f.values.size() != g.size()) throw Error("forward_transform: field size does not match grid");
  require_finite(f.values);
  Spectrum2D out{g, std::vector<Complex>(g.nx() * g.ny_half())};
  plan_2d(g.nx(), g.ny()).forward(f.values, out.coeffs);
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    const double px = origin_phase(g.x().mode(ix));
    for (std::size_t jy = 0; jy < g.ny_half(); ++jy) {
      out.coeffs[ix * g.ny_half() + jy] *= px * origin_phase(static_cast<long>(jy));
    }
  }
  return out;
}

Field2D inverse_transform(const Spectrum2D& v, double hermitian_tol) {
  const Grid2D& g = v.grid;
  const std::size_t nyh = g.ny_half();
  if (v.coeffs.size() != g.nx() * nyh) throw Error("inverse_transform: spectrum size does not match grid");
  const double scale = std::max(max_abs(v.coeffs), 1e-300);
  for (std::size_t jy : {std::size_t{0}, g.ny() / 2}) {
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
      const Complex a = v.at(ix, jy);
      const Complex b = v.at((g.nx() - ix) % g.nx(), jy);
      if (std::abs(a - std::conj(b)) > hermitian_tol * scale) {
        throw Error("inverse_transform: spectrum is not Hermitian at kx mode " + std::to_string(ix));
      }
    }
  }
  std::vector<Complex> raw(v.coeffs);
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    const double px = origin_phase(g.x().mode(ix));
    for (std::size_t jy = 0; jy < nyh; ++jy) {
      raw[ix * nyh + jy] *= px * origin_phase(static_cast<long>(jy));
    }
  }
  Field2D out{g, std::vector<double>(g.size())};
  plan_2d(g.nx(), g.ny()).inverse(raw, out.values);
  return out;
}

Spectrum1D derivative_x(const Spectrum1D& v, int order) {
  check_order(order);
  Spectrum1D out = v;
  const std::size_t n = v.grid.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (order % 2 == 1 && j == v.grid.nyquist_index()) {
      out.coeffs[j] = 0.0;
      continue;
    }
    out.coeffs[j] *= ipow(Complex(0.0, v.grid.wavenumber(j)), order);
  }
  return out;
}

Spectrum2D derivative_x(const Spectrum2D& v, int order) {
  check_order(order);
  Spectrum2D out = v;
  const Grid2D& g = v.grid;
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    const bool zero = order % 2 == 1 && ix == g.x().nyquist_index();
    const Complex mult = zero ? Complex(0.0) : ipow(Complex(0.0, g.x().wavenumber(ix)), order);
    for (std::size_t jy = 0; jy < g.ny_half(); ++jy) out.coeffs[ix * g.ny_half() + jy] *= mult;
  }
  return out;
}

Spectrum2D derivative_y(const Spectrum2D& v, int order) {
  check_order(order);
  Spectrum2D out = v;
  const Grid2D& g = v.grid;
  for (std::size_t jy = 0; jy < g.ny_half(); ++jy) {
    const bool zero = order % 2 == 1 && jy == g.ny() / 2;
    const double ky = static_cast<double>(jy) / g.y().half_period();
    const Complex mult = zero ? Complex(0.0) : ipow(Complex(0.0, ky), order);
    for (std::size_t ix = 0; ix < g.nx(); ++ix) out.coeffs[ix * g.ny_half() + jy] *= mult;
  }
  return out;
}

Spectrum2D antiderivative_x(const Spectrum2D& v) {
  Spectrum2D out = v;
  const Grid2D& g = v.grid;
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    const long mode = g.x().mode(ix);
    const bool zero = mode == 0 || ix == g.x().nyquist_index();
    const Complex mult = zero ? Complex(0.0) : Complex(0.0, -1.0 / g.x().wavenumber(ix));
    for (std::size_t jy = 0; jy < g.ny_half(); ++jy) out.coeffs[ix * g.ny_half() + jy] *= mult;
  }
  return out;
}

void dealias_two_thirds(Spectrum1D& v) {
  const long cut = static_cast<long>(v.grid.size()) / 3;
  for (std::size_t j = 0; j < v.grid.size(); ++j) {
    if (std::labs(v.grid.mode(j)) > cut) v.coeffs[j] = 0.0;
  }
}

void dealias_two_thirds(Spectrum2D& v) {
  const Grid2D& g = v.grid;
  const long cutx = static_cast<long>(g.nx()) / 3;
  const long cuty = static_cast<long>(g.ny()) / 3;
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    for (std::size_t jy = 0; jy < g.ny_half(); ++jy) {
      if (std::labs(g.x().mode(ix)) > cutx || static_cast<long>(jy) > cuty) {
        v.coeffs[ix * g.ny_half() + jy] = 0.0;
      }
    }
  }
}

double parseval_integral(const Spectrum1D& v) {
  double s = 0.0;
  for (const auto& z : v.coeffs) s += std::norm(z);
  return s * v.grid.dx() / static_cast<double>(v.grid.size());
}

std::vector<double> differentiate(const Grid1D& grid, std::span<const double> u, int order) {
  check_order(order);
  const std::size_t n = grid.size();
  if (u.size() != n) throw Error("differentiate: length does not match grid");
  std::vector<Complex> half(n / 2 + 1);
  RealFft1D& plan = plan_1d(n);
  plan.forward(u, half);
  for (std::size_t j = 0; j <= n / 2; ++j) {
    if (order % 2 == 1 && j == n / 2) {
      half[j] = 0.0;
    } else {
      half[j] *= ipow(Complex(0.0, grid.wavenumber(j)), order);
    }
  }
  std::vector<double> out(n);
  plan.inverse(half, out);
  return out;
}

}  // namespace breakup
