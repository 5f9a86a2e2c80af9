#include "breakup/evolve2d.hpp"

#include <cmath>
#include <sstream>

#include "breakup/fft.hpp"
#include "breakup/snapshot.hpp"
#include "breakup/spectral.hpp"

namespace breakup {

SliceKind parse_slice_kind(const std::string& name) {
  if (name == "y_zero_cut" || name == "y0") return SliceKind::kYZeroCut;
  if (name == "ky_zero" || name == "ky0") return SliceKind::kKyZero;
  throw Error("unknown tracker slice '" + name + "'");
}

std::string to_string(SliceKind kind) {
  return kind == SliceKind::kYZeroCut ? "y_zero_cut" : "ky_zero";
}

void validate(const Evolver2DConfig& cfg) {
  if (cfg.lambda != -1 && cfg.lambda != 1) throw Error("evolve2d: lambda must be -1 or +1");
  if (!(cfg.epsilon >= 0.0)) throw Error("evolve2d: epsilon must be nonnegative");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw Error("evolve2d: dt must be positive");
  if (cfg.snapshot_stride < 1) throw Error("evolve2d: snapshot_stride must be >= 1");
  if (cfg.grid.size() == 0) throw Error("evolve2d: grid not set");
}

std::vector<Complex> linear_symbol(const Evolver2DConfig& cfg) {
  const Grid2D& g = cfg.grid;
  const std::size_t nyh = g.ny_half();
  std::vector<Complex> sym(g.nx() * nyh, 0.0);
  const double e2 = cfg.epsilon * cfg.epsilon;
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    if (g.x().mode(ix) == 0 || ix == g.x().nyquist_index()) continue;
    const double kx = g.x().wavenumber(ix);
    for (std::size_t jy = 0; jy < nyh; ++jy) {
      const double ky = static_cast<double>(jy) / g.y().half_period();
      sym[ix * nyh + jy] = Complex(0.0, e2 * kx * kx * kx - cfg.lambda * ky * ky / kx);
    }
  }
  return sym;
}

Field2D rhs_dkp(const Field2D& u, int lambda) {
  const Spectrum2D v = forward_transform(u);
  const Field2D ux = inverse_transform(derivative_x(v, 1));
  const Field2D nonlocal = inverse_transform(antiderivative_x(derivative_y(v, 2)));
  Field2D out{u.grid, std::vector<double>(u.grid.size())};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = -6.0 * u.values[i] * ux.values[i] - lambda * nonlocal.values[i];
  }
  return out;
}

double constraint_residual(const Spectrum2D& v) {
  double m = 0.0;
  for (std::size_t jy = 1; jy < v.grid.ny_half(); ++jy) m = std::max(m, std::abs(v.at(0, jy)));
  return m * v.grid.cell_area();
}

struct Evolver2D::Impl {
  RealFft2D fft;
  Grid2D grid;
  std::size_t nx, ny, nyh, nh;
  std::vector<double> ikx;  // per row
  std::vector<Complex> symbol;
  std::vector<Complex> v, w, nv, na, nb, nc, a, b, c;
  std::vector<double> u;
  bool dealias;
  PhiTable table;
  PhiTable odd_table;

  Impl(const Evolver2DConfig& cfg)
      : fft(cfg.grid.nx(), cfg.grid.ny()),
        grid(cfg.grid),
        nx(cfg.grid.nx()),
        ny(cfg.grid.ny()),
        nyh(cfg.grid.ny_half()),
        nh(cfg.grid.nx() * cfg.grid.ny_half()),
        ikx(nx),
        symbol(linear_symbol(cfg)),
        v(nh), w(nh), nv(nh), na(nh), nb(nh), nc(nh), a(nh), b(nh), c(nh),
        u(cfg.grid.size()),
        dealias(cfg.dealias),
        table(make_phi_table(symbol, cfg.dt)) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      ikx[ix] = ix == grid.x().nyquist_index() ? 0.0 : grid.x().wavenumber(ix);
    }
  }

  void nonlinear(const std::vector<Complex>& in, std::vector<Complex>& out) {
    fft.inverse(in, u);
    for (auto& x : u) x *= x;
    fft.forward(u, w);
    const long cutx = static_cast<long>(nx) / 3;
    const std::size_t cuty = ny / 3;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const Complex m(0.0, -3.0 * ikx[ix]);
      const bool drop_row = dealias && std::labs(grid.x().mode(ix)) > cutx;
      for (std::size_t jy = 0; jy < nyh; ++jy) {
        const std::size_t k = ix * nyh + jy;
        out[k] = (drop_row || (dealias && jy > cuty)) ? Complex(0.0) : m * w[k];
      }
    }
  }

  void etd4(const PhiTable& t) {
    nonlinear(v, nv);
    for (std::size_t j = 0; j < nh; ++j) a[j] = t.e2[j] * v[j] + t.q[j] * nv[j];
    nonlinear(a, na);
    for (std::size_t j = 0; j < nh; ++j) b[j] = t.e2[j] * v[j] + t.q[j] * na[j];
    nonlinear(b, nb);
    for (std::size_t j = 0; j < nh; ++j) c[j] = t.e2[j] * a[j] + t.q[j] * (2.0 * nb[j] - nv[j]);
    nonlinear(c, nc);
    for (std::size_t j = 0; j < nh; ++j) {
      v[j] = t.e[j] * v[j] + t.f1[j] * nv[j] + 2.0 * t.f2[j] * (na[j] + nb[j]) + t.f3[j] * nc[j];
    }
  }

  void step(double h) {
    if (h == table.h) {
      etd4(table);
      return;
    }
    if (h != odd_table.h) odd_table = make_phi_table(symbol, h);
    etd4(odd_table);
  }

  void set_public(const std::vector<Complex>& pub) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double px = origin_phase(grid.x().mode(ix));
      for (std::size_t jy = 0; jy < nyh; ++jy) {
        v[ix * nyh + jy] = px * origin_phase(static_cast<long>(jy)) * pub[ix * nyh + jy];
      }
    }
  }
};

Evolver2D::Evolver2D(const Evolver2DConfig& cfg, const Field2D& u0, double t0) : cfg_(cfg), t0_(t0) {
  validate(cfg_);
  if (!(u0.grid == cfg_.grid)) throw Error("evolve2d: initial data grid differs from config grid");
  impl_ = std::make_unique<Impl>(cfg_);
  impl_->set_public(forward_transform(u0).coeffs);
}

Evolver2D::Evolver2D(const Evolver2DConfig& cfg, const Spectrum2D& v0, double t0) : cfg_(cfg), t0_(t0) {
  validate(cfg_);
  if (!(v0.grid == cfg_.grid)) throw Error("evolve2d: initial spectrum grid differs from config grid");
  impl_ = std::make_unique<Impl>(cfg_);
  impl_->set_public(v0.coeffs);
}

Evolver2D::~Evolver2D() = default;
Evolver2D::Evolver2D(Evolver2D&&) noexcept = default;
Evolver2D& Evolver2D::operator=(Evolver2D&&) noexcept = default;

void Evolver2D::set_dt(double dt) {
  Evolver2DConfig next = cfg_;
  next.dt = dt;
  validate(next);
  t0_ = time();
  extra_ = 0.0;
  steps_since_rebase_ = 0;
  cfg_ = next;
  impl_->table = make_phi_table(impl_->symbol, dt);
}

void Evolver2D::step() { step(cfg_.dt); }

void Evolver2D::step(double h) {
  if (!(h > 0.0)) throw Error("evolve2d: step size must be positive");
  const std::vector<Complex> previous = impl_->v;
  impl_->step(h);
  for (const auto& z : impl_->v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      impl_->v = previous;
      std::ostringstream os;
      os << "evolve2d: non-finite values after step at t = " << time();
      throw NumericalBlowup2D(os.str(), time());
    }
  }
  ++steps_;
  ++steps_since_rebase_;
  if (h != cfg_.dt) extra_ += h - cfg_.dt;
}

void Evolver2D::advance_to(double t) {
  if (t < time() - 1e-12 * std::max(1.0, std::abs(t))) throw Error("advance_to: target time lies in the past");
  while (time() < t - 1e-12 * std::max(1.0, std::abs(t))) {
    const double remaining = t - time();
    if (remaining < cfg_.dt * (1.0 + 1e-9)) {
      step(remaining);
      break;
    }
    step();
  }
}

Field2D Evolver2D::field() const {
  Field2D f{cfg_.grid, std::vector<double>(cfg_.grid.size())};
  impl_->fft.inverse(impl_->v, f.values);
  return f;
}

Spectrum2D Evolver2D::spectrum() const {
  Spectrum2D s{cfg_.grid, impl_->v};
  const Grid2D& g = cfg_.grid;
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    const double px = origin_phase(g.x().mode(ix));
    for (std::size_t jy = 0; jy < g.ny_half(); ++jy) {
      s.coeffs[ix * g.ny_half() + jy] *= px * origin_phase(static_cast<long>(jy));
    }
  }
  return s;
}

Spectrum1D Evolver2D::slice() const { return tracker_slice(field(), cfg_.slice); }

Field2D step_etd4_kp(const Field2D& u, const Evolver2DConfig& cfg) {
  Evolver2D ev(cfg, u);
  ev.step();
  return ev.field();
}

Spectrum1D tracker_slice(const Field2D& u, SliceKind kind) {
  const Grid2D& g = u.grid;
  if (kind == SliceKind::kYZeroCut) {
    // y_j = 0 at j = Ny/2
    const std::size_t j0 = g.ny() / 2;
    Field1D cut{g.x(), std::vector<double>(g.nx())};
    for (std::size_t i = 0; i < g.nx(); ++i) cut.values[i] = u.at(i, j0);
    return forward_transform(cut);
  }
  const Spectrum2D v = forward_transform(u);
  Spectrum1D s{g.x(), std::vector<Complex>(g.nx())};
  for (std::size_t ix = 0; ix < g.nx(); ++ix) s.coeffs[ix] = v.at(ix, 0);
  return s;
}

GradientMaps gradient_maps(const Field2D& u) {
  const Spectrum2D v = forward_transform(u);
  Field2D ux = inverse_transform(derivative_x(v, 1));
  Field2D uy = inverse_transform(derivative_y(v, 1));
  const Grid2D& g = u.grid;
  GradientMaps m;
  std::size_t ax = 0;
  std::size_t ay = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (std::abs(ux.values[k]) > std::abs(ux.values[ax])) ax = k;
    if (std::abs(uy.values[k]) > std::abs(uy.values[ay])) ay = k;
  }
  m.ux_max = std::abs(ux.values[ax]);
  m.ux_argmax_x = g.x().x(ax / g.ny());
  m.ux_argmax_y = g.y().x(ax % g.ny());
  m.uy_max = std::abs(uy.values[ay]);
  m.uy_argmax_x = g.x().x(ay / g.ny());
  m.uy_argmax_y = g.y().x(ay % g.ny());
  m.uy_at_ux_max = uy.values[ax];
  for (auto& x : ux.values) x = std::abs(x);
  for (auto& x : uy.values) x = std::abs(x);
  m.abs_ux = std::move(ux);
  m.abs_uy = std::move(uy);
  return m;
}

Field2D evolve(const Evolver2DConfig& cfg, const Field2D& u0, const Callback2D& callback, double t0) {
  Evolver2D ev(cfg, u0, t0);
  auto emit = [&] {
    if (!callback) return;
    const Field2D f = ev.field();
    callback(ev.time(), f, tracker_slice(f, cfg.slice));
  };
  emit();
  long last_emitted = 0;
  try {
    while (ev.time() < cfg.t_end - 1e-12 * std::max(1.0, std::abs(cfg.t_end))) {
      const double remaining = cfg.t_end - ev.time();
      if (remaining < cfg.dt * (1.0 + 1e-9)) {
        ev.step(remaining);
      } else {
        ev.step();
      }
      if (ev.steps() % cfg.snapshot_stride == 0) {
        emit();
        last_emitted = ev.steps();
      }
    }
  } catch (const NumericalBlowup2D&) {
    emit();
    throw;
  }
  if (last_emitted != ev.steps()) emit();
  return ev.field();
}

void write_checkpoint(const std::filesystem::path& path, const Evolver2D& ev, std::uint64_t config_hash) {
  write_snapshot(path, ev.spectrum(), SnapshotMeta{ev.time(), config_hash});
}

Evolver2D restore_checkpoint(const std::filesystem::path& path, const Evolver2DConfig& cfg) {
  const Snapshot snap = read_snapshot(path);
  if (const auto* v = std::get_if<Spectrum2D>(&snap.data)) return Evolver2D(cfg, *v, snap.meta.t);
  if (const auto* f = std::get_if<Field2D>(&snap.data)) return Evolver2D(cfg, *f, snap.meta.t);
  throw Error("checkpoint '" + path.string() + "' does not hold 2D data");
}

}  // namespace breakup
