#include "breakup/phi.hpp"

#include <cmath>

namespace breakup {

namespace {

// exp(z) - 1 without cancellation in the real part.
Complex expm1_complex(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace

std::array<Complex, 4> phi_functions(Complex z) {
  std::array<Complex, 4> phi{};
  if (std::abs(z) < 1.0) {
    // phi_i(z) = sum_n z^n / (n + i)!
    for (int i = 0; i < 4; ++i) {
      double fact = 1.0;
      for (int m = 2; m <= i + 1; ++m) fact *= m;
      Complex term = 1.0 / fact;
      Complex sum = term;
      for (int n = 1; n < 40; ++n) {
        term *= z / static_cast<double>(n + i + 1);
        sum += term;
      }
      phi[i] = sum;
    }
    return phi;
  }
  phi[0] = expm1_complex(z) / z;
  double inv_fact = 1.0;
  for (int k = 1; k < 4; ++k) {
    phi[k] = (phi[k - 1] - inv_fact) / z;
    inv_fact /= static_cast<double>(k + 1);
  }
  return phi;
}

PhiTable make_phi_table(std::span<const Complex> symbol, double h) {
  if (!(h > 0.0)) throw Error("phi table: step must be positive");
  const std::size_t n = symbol.size();
  PhiTable t;
  t.h = h;
  t.phi.resize(n);
  t.e.resize(n);
  t.e2.resize(n);
  t.q.resize(n);
  t.f1.resize(n);
  t.f2.resize(n);
  t.f3.resize(n);
  // Symbols repeat heavily (1D: +-k pairs, 2D: whole rows), so memoize.
  Complex last_sym(NAN, NAN);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex s = symbol[j];
    if (j > 0 && s == last_sym) {
      t.phi[j] = t.phi[j - 1];
      t.e[j] = t.e[j - 1];
      t.e2[j] = t.e2[j - 1];
      t.q[j] = t.q[j - 1];
      t.f1[j] = t.f1[j - 1];
      t.f2[j] = t.f2[j - 1];
      t.f3[j] = t.f3[j - 1];
      continue;
    }
    last_sym = s;
    const Complex z = h * s;
    const auto p = phi_functions(z);
    const auto ph = phi_functions(0.5 * z);
    t.phi[j] = p;
    t.e[j] = std::exp(z);
    t.e2[j] = std::exp(0.5 * z);
    t.q[j] = 0.5 * h * ph[0];
    t.f1[j] = h * (p[0] - 3.0 * p[1] + 4.0 * p[2]);
    t.f2[j] = h * (p[1] - 2.0 * p[2]);
    t.f3[j] = h * (-p[1] + 4.0 * p[2]);
    for (const Complex& c : {t.e[j], t.e2[j], t.q[j], t.f1[j], t.f2[j], t.f3[j]}) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw Error("phi table: non-finite coefficient; the step is too large for the linear part");
      }
    }
  }
  return t;
}

}  // namespace breakup
