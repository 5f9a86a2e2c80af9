#include "breakup/evolve1d.hpp"

#include <cmath>
#include <sstream>

#include "breakup/fft.hpp"
#include "breakup/snapshot.hpp"
#include "breakup/spectral.hpp"

namespace breakup {

namespace {

constexpr double kGuardThreshold = 1e-10;

bool all_finite(const std::vector<Complex>& v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace

Equation1D parse_equation1d(const std::string& name) {
  if (name == "hopf") return Equation1D::kHopf;
  if (name == "burgers") return Equation1D::kBurgers;
  if (name == "kdv") return Equation1D::kKdV;
  throw Error("unknown 1D equation '" + name + "'");
}

std::string to_string(Equation1D eq) {
  switch (eq) {
    case Equation1D::kHopf: return "hopf";
    case Equation1D::kBurgers: return "burgers";
    case Equation1D::kKdV: return "kdv";
  }
  return "?";
}

void validate(const Evolver1DConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw Error("evolve1d: dt must be positive");
  if (!(cfg.epsilon >= 0.0)) throw Error("evolve1d: epsilon must be nonnegative");
  if ((cfg.epsilon == 0.0) != (cfg.equation == Equation1D::kHopf)) {
    throw Error("evolve1d: epsilon must be zero for Hopf and positive for Burgers/KdV");
  }
  if (cfg.snapshot_stride < 1) throw Error("evolve1d: snapshot_stride must be >= 1");
  if (cfg.grid.size() == 0) throw Error("evolve1d: grid not set");
}

std::vector<Complex> linear_symbol(const Evolver1DConfig& cfg) {
  const std::size_t nh = cfg.grid.size() / 2 + 1;
  std::vector<Complex> sym(nh, 0.0);
  for (std::size_t j = 0; j < nh; ++j) {
    const double k = static_cast<double>(j) / cfg.grid.half_period();
    switch (cfg.equation) {
      case Equation1D::kHopf: break;
      case Equation1D::kBurgers: sym[j] = -cfg.epsilon * k * k; break;
      case Equation1D::kKdV: {
        // Odd symbol: the Nyquist mode carries no phase information.
        sym[j] = j == nh - 1 ? Complex(0.0) : Complex(0.0, cfg.epsilon * cfg.epsilon * k * k * k);
        break;
      }
    }
  }
  return sym;
}

double trailing_magnitude(const Spectrum1D& v) {
  const long half = static_cast<long>(v.grid.size() / 2);
  const long start = static_cast<long>(std::ceil(0.9 * static_cast<double>(half)));
  double m = 0.0;
  for (std::size_t j = 0; j < v.grid.size(); ++j) {
    if (std::labs(v.grid.mode(j)) >= start) m = std::max(m, std::abs(v.coeffs[j]));
  }
  return m;
}

struct Evolver1D::Impl {
  RealFft1D fft;
  std::size_t n;
  std::size_t nh;
  std::vector<double> ik;  // imaginary part of the first-derivative multiplier
  std::vector<Complex> symbol;
  std::vector<Complex> v;
  std::vector<double> u;
  std::vector<Complex> w;
  std::vector<Complex> nv, na, nb, nc, a, b, c;
  bool use_etd;
  bool dealias;
  long dealias_cut;
  PhiTable table;
  PhiTable odd_table;

  Impl(const Evolver1DConfig& cfg)
      : fft(cfg.grid.size()),
        n(cfg.grid.size()),
        nh(cfg.grid.size() / 2 + 1),
        ik(nh),
        symbol(linear_symbol(cfg)),
        v(nh),
        u(n),
        w(nh),
        nv(nh), na(nh), nb(nh), nc(nh), a(nh), b(nh), c(nh),
        dealias(cfg.dealias),
        dealias_cut(static_cast<long>(cfg.grid.size()) / 3) {
    for (std::size_t j = 0; j < nh; ++j) ik[j] = static_cast<double>(j) / cfg.grid.half_period();
    ik[nh - 1] = 0.0;
    use_etd = cfg.integrator == Integrator::kEtd4 ||
              (cfg.integrator == Integrator::kAuto && cfg.equation != Equation1D::kHopf);
    if (use_etd) table = make_phi_table(symbol, cfg.dt);
  }

  // out = -3 i k FFT(u^2)
  void nonlinear(const std::vector<Complex>& in, std::vector<Complex>& out) {
    fft.inverse(in, u);
    for (auto& x : u) x *= x;
    fft.forward(u, w);
    for (std::size_t j = 0; j < nh; ++j) out[j] = Complex(0.0, -3.0 * ik[j]) * w[j];
    if (dealias) {
      for (std::size_t j = 0; j < nh; ++j) {
        if (static_cast<long>(j) > dealias_cut) out[j] = 0.0;
      }
    }
  }

  void rhs(const std::vector<Complex>& in, std::vector<Complex>& out) {
    nonlinear(in, out);
    for (std::size_t j = 0; j < nh; ++j) out[j] += symbol[j] * in[j];
  }

  void rk4(double h) {
    rhs(v, nv);
    for (std::size_t j = 0; j < nh; ++j) a[j] = v[j] + 0.5 * h * nv[j];
    rhs(a, na);
    for (std::size_t j = 0; j < nh; ++j) b[j] = v[j] + 0.5 * h * na[j];
    rhs(b, nb);
    for (std::size_t j = 0; j < nh; ++j) c[j] = v[j] + h * nb[j];
    rhs(c, nc);
    for (std::size_t j = 0; j < nh; ++j) {
      v[j] += h / 6.0 * (nv[j] + 2.0 * na[j] + 2.0 * nb[j] + nc[j]);
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
    if (!use_etd) {
      rk4(h);
      return;
    }
    if (h == table.h) {
      etd4(table);
      return;
    }
    if (h != odd_table.h) odd_table = make_phi_table(symbol, h);
    etd4(odd_table);
  }
};

Evolver1D::Evolver1D(const Evolver1DConfig& cfg, const Field1D& u0, double t0) : cfg_(cfg), t0_(t0) {
  validate(cfg_);
  if (!(u0.grid == cfg_.grid)) throw Error("evolve1d: initial data grid differs from config grid");
  impl_ = std::make_unique<Impl>(cfg_);
  for (double x : u0.values) {
    if (!std::isfinite(x)) throw Error("evolve1d: non-finite initial data");
  }
  impl_->fft.forward(u0.values, impl_->v);
  guard(impl_->v);
}

Evolver1D::Evolver1D(const Evolver1DConfig& cfg, const Spectrum1D& v0, double t0) : cfg_(cfg), t0_(t0) {
  validate(cfg_);
  if (!(v0.grid == cfg_.grid)) throw Error("evolve1d: initial spectrum grid differs from config grid");
  impl_ = std::make_unique<Impl>(cfg_);
  for (std::size_t j = 0; j < impl_->nh; ++j) {
    impl_->v[j] = origin_phase(static_cast<long>(j)) * v0.coeffs[j];
  }
  guard(impl_->v);
}

Evolver1D::~Evolver1D() = default;
Evolver1D::Evolver1D(Evolver1D&&) noexcept = default;
Evolver1D& Evolver1D::operator=(Evolver1D&&) noexcept = default;

void Evolver1D::set_dt(double dt) {
  Evolver1DConfig next = cfg_;
  next.dt = dt;
  validate(next);
  // Rebase so that time() stays exact in the new step size.
  t0_ = time();
  extra_ = 0.0;
  steps_since_rebase_ = 0;
  cfg_ = next;
  if (impl_->use_etd) impl_->table = make_phi_table(impl_->symbol, dt);
}

void Evolver1D::guard(const std::vector<Complex>& v) {
  if (!resolution_ok_) return;
  const std::size_t start = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(impl_->nh - 1)));
  double m = 0.0;
  for (std::size_t j = start; j < impl_->nh; ++j) m = std::max(m, std::abs(v[j]));
  if (m > kGuardThreshold) {
    resolution_ok_ = false;
    std::ostringstream os;
    os << "resolution: trailing spectral decade reaches " << m << " > 1e-10 at t = " << time();
    warnings_.push_back(os.str());
  }
}

void Evolver1D::step() { step(cfg_.dt); }

void Evolver1D::step(double h) {
  if (!(h > 0.0)) throw Error("evolve1d: step size must be positive");
  const std::vector<Complex> previous = impl_->v;
  impl_->step(h);
  if (!all_finite(impl_->v)) {
    impl_->v = previous;
    std::ostringstream os;
    os << "evolve1d: non-finite values after step at t = " << time();
    throw NumericalBlowup(os.str(), field(), time());
  }
  ++steps_;
  ++steps_since_rebase_;
  if (h != cfg_.dt) extra_ += h - cfg_.dt;
  guard(impl_->v);
}

void Evolver1D::advance_to(double t) {
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

Field1D Evolver1D::field() const {
  Field1D f{cfg_.grid, std::vector<double>(impl_->n)};
  std::vector<Complex> copy = impl_->v;
  impl_->fft.inverse(copy, f.values);
  return f;
}

Spectrum1D Evolver1D::spectrum() const {
  const std::size_t n = impl_->n;
  Spectrum1D s{cfg_.grid, std::vector<Complex>(n)};
  for (std::size_t j = 0; j < impl_->nh; ++j) {
    s.coeffs[j] = origin_phase(static_cast<long>(j)) * impl_->v[j];
  }
  for (std::size_t j = impl_->nh; j < n; ++j) s.coeffs[j] = std::conj(s.coeffs[n - j]);
  return s;
}

Field1D step_rk4_hopf(const Field1D& u, double dt) {
  Evolver1DConfig cfg;
  cfg.equation = Equation1D::kHopf;
  cfg.grid = u.grid;
  cfg.dt = dt;
  cfg.integrator = Integrator::kRk4;
  Evolver1D ev(cfg, u);
  ev.step();
  return ev.field();
}

Field1D step_etd4(const Field1D& u, const Evolver1DConfig& cfg) {
  Evolver1DConfig c = cfg;
  c.integrator = Integrator::kEtd4;
  Evolver1D ev(c, u);
  ev.step();
  return ev.field();
}

Field1D evolve(const Evolver1DConfig& cfg, const Field1D& u0, const Callback1D& callback, double t0) {
  Evolver1D ev(cfg, u0, t0);
  auto emit = [&] {
    if (callback) callback(ev.time(), ev.field(), ev.spectrum());
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
  } catch (const NumericalBlowup& e) {
    if (callback) callback(e.time(), e.last_good(), forward_transform(e.last_good()));
    throw;
  }
  if (last_emitted != ev.steps()) emit();
  return ev.field();
}

void write_checkpoint(const std::filesystem::path& path, const Evolver1D& ev, std::uint64_t config_hash) {
  write_snapshot(path, ev.spectrum(), SnapshotMeta{ev.time(), config_hash});
}

Evolver1D restore_checkpoint(const std::filesystem::path& path, const Evolver1DConfig& cfg) {
  const Snapshot snap = read_snapshot(path);
  if (const auto* v = std::get_if<Spectrum1D>(&snap.data)) return Evolver1D(cfg, *v, snap.meta.t);
  if (const auto* f = std::get_if<Field1D>(&snap.data)) return Evolver1D(cfg, *f, snap.meta.t);
  throw Error("checkpoint '" + path.string() + "' does not hold 1D data");
}

}  // namespace breakup
