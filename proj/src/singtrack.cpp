#include "breakup/singtrack.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace breakup {

namespace {

struct LsqResult {
  Eigen::VectorXd coef;
  double residual = 0.0;
  double condition = 0.0;
};

// Householder QR on the column-scaled design.
LsqResult least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  const Eigen::Index cols = design.cols();
  Eigen::VectorXd scale(cols);
  Eigen::MatrixXd scaled = design;
  for (Eigen::Index c = 0; c < cols; ++c) {
    const double norm = design.col(c).norm();
    scale(c) = norm > 0.0 ? norm : 1.0;
    scaled.col(c) /= scale(c);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(scaled);
  Eigen::VectorXd z = qr.solve(y);
  LsqResult out;
  out.coef = z.cwiseQuotient(scale);
  out.residual = (y - design * out.coef).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  out.condition = sv(cols - 1) > 0.0 ? sv(0) / sv(cols - 1) : INFINITY;
  return out;
}

struct Candidates {
  std::vector<double> k;
  std::vector<double> log_abs;
  std::vector<double> arg;
};

Candidates collect(const Spectrum1D& v, double k_min, double k_max, double floor) {
  Candidates c;
  const std::size_t n = v.grid.size();
  // Positive modes sit at indices 1..N/2-1 in ascending k.
  for (std::size_t j = 1; j < n / 2; ++j) {
    const double k = v.grid.wavenumber(j);
    if (k <= k_min || k > k_max) continue;
    const double a = std::abs(v.coeffs[j]);
    if (!(a > floor)) continue;
    c.k.push_back(k);
    c.log_abs.push_back(std::log(a));
    c.arg.push_back(std::arg(v.coeffs[j]));
  }
  return c;
}

ModulusFit modulus_on(std::span<const double> k, std::span<const double> y) {
  const std::size_t n = k.size();
  if (n < 8) throw InsufficientData("fit_modulus: need at least 8 coefficients, have " + std::to_string(n));
  Eigen::MatrixXd m(n, 3);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(k[i] > 0.0)) throw Error("fit_modulus: wavenumbers must be positive");
    m(i, 0) = 1.0;
    m(i, 1) = -std::log(k[i]);
    m(i, 2) = -k[i];
    rhs(i) = y[i];
  }
  const LsqResult r = least_squares(m, rhs);
  ModulusFit f;
  f.A = r.coef(0);
  f.B = r.coef(1);
  f.delta = r.coef(2);
  f.Delta = r.residual;
  f.k_first = *std::min_element(k.begin(), k.end());
  f.k_last = *std::max_element(k.begin(), k.end());
  f.points = n;
  f.condition = r.condition;
  return f;
}

}  // namespace

ModulusFit fit_modulus(std::span<const double> k, std::span<const double> log_abs) {
  if (k.size() != log_abs.size()) throw Error("fit_modulus: size mismatch");
  return modulus_on(k, log_abs);
}

ModulusFit fit_modulus(const Spectrum1D& v, const FitWindow& window) {
  const Candidates c = collect(v, window.k_min, window.k_max, window.floor);
  ModulusFit f = modulus_on(c.k, c.log_abs);
  f.floor = window.floor;
  return f;
}

std::vector<double> unwrap_phase(std::span<const double> phase_descending) {
  std::vector<double> p(phase_descending.begin(), phase_descending.end());
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    for (;;) {
      const double d = p[j + 1] - p[j];
      if (std::abs(d) > std::abs(d + kPi)) {
        p[j + 1] += kPi;
      } else if (std::abs(d) > std::abs(d - kPi)) {
        p[j + 1] -= kPi;
      } else {
        break;
      }
    }
  }
  return p;
}

UnwrappedPhase unwrap_phase(const Spectrum1D& v, const FitWindow& window) {
  Candidates c = collect(v, window.k_min, window.k_max, std::max(window.floor, 0.0));
  std::reverse(c.k.begin(), c.k.end());
  std::reverse(c.arg.begin(), c.arg.end());
  UnwrappedPhase out;
  out.phi = unwrap_phase(c.arg);
  out.k = std::move(c.k);
  return out;
}

PhaseFit fit_phase(std::span<const double> k, std::span<const double> phi) {
  const std::size_t n = k.size();
  if (n != phi.size()) throw Error("fit_phase: size mismatch");
  if (n < 8) throw InsufficientData("fit_phase: need at least 8 coefficients, have " + std::to_string(n));
  Eigen::MatrixXd m(n, 2);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, 0) = 1.0;
    m(i, 1) = -k[i];
    rhs(i) = phi[i];
  }
  const LsqResult r = least_squares(m, rhs);
  PhaseFit f;
  f.C = r.coef(0);
  f.alpha = r.coef(1);
  f.Delta2 = r.residual;
  f.points = n;
  f.condition = r.condition;
  return f;
}

PhaseFit fit_phase(const UnwrappedPhase& phase) { return fit_phase(phase.k, phase.phi); }

void validate(const WindowPolicy& policy) {
  if (!(policy.k_min >= 1.0)) throw Error("window policy: k_min must be >= 1");
  if (!(policy.floor >= 0.0)) throw Error("window policy: floor must be nonnegative");
  if (policy.min_points < 8) throw Error("window policy: min_points must be >= 8");
  if (policy.k_cap_fraction < 0.0 || policy.k_cap_fraction > 1.0) {
    throw Error("window policy: k_cap_fraction must lie in [0, 1]");
  }
}

std::string to_string(WindowStatus status) {
  switch (status) {
    case WindowStatus::kOk: return "ok";
    case WindowStatus::kHalfRuleFailed: return "half_rule_failed";
    case WindowStatus::kTargetUnreachable: return "target_unreachable";
  }
  return "?";
}

WindowSelection select_window(const Spectrum1D& v, const WindowPolicy& policy) {
  validate(policy);
  WindowSelection sel;
  const std::size_t n = v.grid.size();
  for (std::size_t j = 1; j < n / 2; ++j) {
    if (std::abs(v.coeffs[j]) > policy.floor) {
      ++sel.above_floor;
      sel.k1 = v.grid.wavenumber(j);
    }
  }
  double k_hi = sel.k1;
  if (policy.k_cap_fraction > 0.0) k_hi = std::min(k_hi, policy.k_cap_fraction * v.grid.max_wavenumber());
  const Candidates c = collect(v, policy.k_min, k_hi, policy.floor);
  const std::size_t total = c.k.size();
  if (total < policy.min_points) {
    throw InsufficientData("select_window: only " + std::to_string(total) +
                           " coefficients above the floor in (k_min, k1]");
  }
  auto fit_prefix = [&](std::size_t end) {
    return modulus_on(std::span(c.k).first(end), std::span(c.log_abs).first(end));
  };

  ModulusFit best = fit_prefix(total);
  sel.best_p = best.Delta;
  std::size_t end = total;
  if (policy.p > 0.0 && best.Delta >= policy.p) {
    // Largest end index in [min_points, total) with Delta < p.
    std::size_t lo = policy.min_points;
    std::size_t hi = total;
    ModulusFit lo_fit = fit_prefix(lo);
    sel.best_p = std::min(sel.best_p, lo_fit.Delta);
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      ModulusFit f = fit_prefix(mid);
      sel.best_p = std::min(sel.best_p, f.Delta);
      if (f.Delta < policy.p) {
        lo = mid;
        lo_fit = f;
      } else {
        hi = mid;
      }
    }
    end = lo;
    best = lo_fit;
    if (!(best.Delta < policy.p)) sel.status = WindowStatus::kTargetUnreachable;
  }
  best.floor = policy.floor;
  sel.fit = best;
  sel.window = FitWindow{policy.k_min, c.k[end - 1], policy.floor};
  if (sel.status == WindowStatus::kOk && policy.half_rule && 2 * end < sel.above_floor) {
    sel.status = WindowStatus::kHalfRuleFailed;
  }
  return sel;
}

ConsistencyAB consistency_AB(const ModulusFit& fit, const Grid1D& grid) {
  const double b = fit.B;
  if (!(b > 1.0)) throw Error("consistency_AB: undefined for B <= 1");
  ConsistencyAB out;
  out.A_fit = fit.A;
  out.A_predicted = 0.5 * std::log(2.0 * kPi) + (b - 0.5) * std::log(b - 1.0) - (b - 1.0) -
                    std::log(grid.resolution());
  return out;
}

Tracker::Tracker(const WindowPolicy& policy, double resolution, double t_start)
    : policy_(policy), t_start_(t_start) {
  validate(policy_);
  trace_.resolution = resolution;
}

void Tracker::observe(double t, const Spectrum1D& v) {
  if (t < t_start_) return;
  TrackerSample s;
  s.t = t;
  try {
    const WindowSelection sel = select_window(v, policy_);
    s.modulus = sel.fit;
    s.status = sel.status;
    s.phase = fit_phase(unwrap_phase(v, sel.window));
    s.ok = std::isfinite(s.modulus.delta) && std::isfinite(s.phase.alpha);
    if (!s.ok) s.gap = "non-finite fit";
  } catch (const Error& e) {
    s.ok = false;
    s.gap = e.what();
  }
  trace_.samples.push_back(s);
  if (!s.ok) return;

  const double delta = s.modulus.delta;
  auto fill = [&](TrackerEvent& ev, double level) {
    ev.fired = true;
    ev.t_sample = t;
    ev.t_interpolated = t;
    if (last_ok_ && last_ok_->modulus.delta > level) {
      const double d0 = last_ok_->modulus.delta - level;
      const double d1 = delta - level;
      ev.t_interpolated = last_ok_->t + (t - last_ok_->t) * d0 / (d0 - d1);
    }
    ev.delta = delta;
    ev.B = s.modulus.B;
    ev.alpha = s.phase.alpha;
    ev.A = s.modulus.A;
  };
  if (!trace_.below_resolution.fired && delta < trace_.resolution) fill(trace_.below_resolution, trace_.resolution);
  if (!trace_.sign_change.fired && delta <= 0.0) fill(trace_.sign_change, 0.0);
  last_ok_ = s;
}

AsyncTracker::AsyncTracker(const WindowPolicy& policy, double resolution, double t_start)
    : tracker_(policy, resolution, t_start), worker_([this] { run(); }) {}

AsyncTracker::~AsyncTracker() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

void AsyncTracker::submit(double t, Spectrum1D v) {
  {
    std::lock_guard lock(mutex_);
    queue_.emplace_back(t, std::move(v));
    ++submitted_;
  }
  cv_.notify_all();
}

void AsyncTracker::run() {
  for (;;) {
    std::pair<double, Spectrum1D> item;
    {
      std::unique_lock lock(mutex_);
      cv_.wait(lock, [&] { return stop_ || !queue_.empty(); });
      if (queue_.empty()) return;
      item = std::move(queue_.front());
      queue_.pop_front();
    }
    const bool before = tracker_.critical_found();
    tracker_.observe(item.first, item.second);
    {
      std::lock_guard lock(mutex_);
      ++processed_;
      if (!before && tracker_.critical_found()) critical_at_ = processed_;
    }
    cv_.notify_all();
  }
}

void AsyncTracker::wait_for(std::size_t count) {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, [&] { return processed_ >= std::min(count, submitted_); });
}

bool AsyncTracker::critical_found_within(std::size_t count) {
  wait_for(count);
  std::lock_guard lock(mutex_);
  return critical_at_ != 0 && critical_at_ <= count;
}

TrackerTrace AsyncTracker::finish() {
  wait_for(submitted_);
  std::lock_guard lock(mutex_);
  return tracker_.trace();
}

void write_trace_csv(const std::filesystem::path& path, const TrackerTrace& trace) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << std::setprecision(17);
  out << "t,A,B,delta,Delta,C,alpha,Delta2,k_min,k_max,cond\n";
  for (const auto& s : trace.samples) {
    out << s.t;
    if (s.ok) {
      out << ',' << s.modulus.A << ',' << s.modulus.B << ',' << s.modulus.delta << ',' << s.modulus.Delta
          << ',' << s.phase.C << ',' << s.phase.alpha << ',' << s.phase.Delta2 << ',' << s.modulus.k_first
          << ',' << s.modulus.k_last << ',' << s.modulus.condition;
    } else {
      out << ",,,,,,,,,,";
    }
    out << '\n';
  }
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace breakup
