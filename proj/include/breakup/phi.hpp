#pragma once

#include <array>
#include <span>
#include <vector>

#include "breakup/grid.hpp"

namespace breakup {

/// phi_i(z) = 1/(i-1)! int_0^1 exp((1 - s) z) s^(i-1) ds for i = 1..4,
/// returned as {phi_1, phi_2, phi_3, phi_4}.
std::array<Complex, 4> phi_functions(Complex z);

/// Per-mode coefficients of the Cox-Matthews ETD4 step for v' = L v + N(v)
/// with diagonal L and step h:
///   a = e2 v + q N(v)
///   b = e2 v + q N(a)
///   c = e2 a + q (2 N(b) - N(v))
///   v' = e v + f1 N(v) + 2 f2 (N(a) + N(b)) + f3 N(c)
/// For L = 0 this is the classical RK4 step.
struct PhiTable {
  double h = 0.0;
  std::vector<std::array<Complex, 4>> phi;  // phi_1..phi_4 of h L
  std::vector<Complex> e, e2, q, f1, f2, f3;
};

PhiTable make_phi_table(std::span<const Complex> symbol, double h);

}  // namespace breakup
