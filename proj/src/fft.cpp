#include "breakup/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cstring>
#include <mutex>

namespace breakup {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::atomic<int> g_threads{1};

void ensure_threads_initialized() {
  static const bool ok = [] { return fftw_init_threads() != 0; }();
  (void)ok;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

template <typename T>
struct FftwBuffer {
  T* data = nullptr;
  explicit FftwBuffer(std::size_t n) : data(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
    if (data == nullptr) throw Error("fft: allocation failed");
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

}  // namespace

void set_fft_threads(int threads) { g_threads = std::max(1, threads); }
int fft_threads() { return g_threads; }

struct RealFft1D::Impl {
  std::size_t n;
  FftwBuffer<double> real;
  FftwBuffer<Complex> spec;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit Impl(std::size_t size) : n(size), real(size), spec(size / 2 + 1) {
    std::lock_guard lock(planner_mutex());
    ensure_threads_initialized();
    fftw_plan_with_nthreads(g_threads);
    const int ni = static_cast<int>(n);
    fwd = fftw_plan_dft_r2c_1d(ni, real.data, as_fftw(spec.data), FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(ni, as_fftw(spec.data), real.data, FFTW_ESTIMATE);
    if (fwd == nullptr || inv == nullptr) throw Error("fft: planning failed");
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
  }
};

RealFft1D::RealFft1D(std::size_t n) : impl_(std::make_unique<Impl>(n)) {}
RealFft1D::~RealFft1D() = default;
RealFft1D::RealFft1D(RealFft1D&&) noexcept = default;
RealFft1D& RealFft1D::operator=(RealFft1D&&) noexcept = default;

std::size_t RealFft1D::size() const { return impl_->n; }

void RealFft1D::forward(std::span<const double> in, std::span<Complex> out) {
  if (in.size() != impl_->n || out.size() != half_size()) throw Error("fft: size mismatch");
  std::copy(in.begin(), in.end(), impl_->real.data);
  fftw_execute(impl_->fwd);
  std::copy_n(impl_->spec.data, out.size(), out.begin());
}

void RealFft1D::inverse(std::span<const Complex> in, std::span<double> out) {
  if (in.size() != half_size() || out.size() != impl_->n) throw Error("fft: size mismatch");
  std::copy(in.begin(), in.end(), impl_->spec.data);
  fftw_execute(impl_->inv);
  const double scale = 1.0 / static_cast<double>(impl_->n);
  for (std::size_t i = 0; i < impl_->n; ++i) out[i] = impl_->real.data[i] * scale;
}

struct RealFft2D::Impl {
  std::size_t nx;
  std::size_t ny;
  FftwBuffer<double> real;
  FftwBuffer<Complex> spec;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  Impl(std::size_t x, std::size_t y) : nx(x), ny(y), real(x * y), spec(x * (y / 2 + 1)) {
    std::lock_guard lock(planner_mutex());
    ensure_threads_initialized();
    fftw_plan_with_nthreads(g_threads);
    const int nxi = static_cast<int>(nx);
    const int nyi = static_cast<int>(ny);
    fwd = fftw_plan_dft_r2c_2d(nxi, nyi, real.data, as_fftw(spec.data), FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_2d(nxi, nyi, as_fftw(spec.data), real.data, FFTW_ESTIMATE);
    if (fwd == nullptr || inv == nullptr) throw Error("fft: planning failed");
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
  }
};

RealFft2D::RealFft2D(std::size_t nx, std::size_t ny) : impl_(std::make_unique<Impl>(nx, ny)) {}
RealFft2D::~RealFft2D() = default;
RealFft2D::RealFft2D(RealFft2D&&) noexcept = default;
RealFft2D& RealFft2D::operator=(RealFft2D&&) noexcept = default;

std::size_t RealFft2D::nx() const { return impl_->nx; }
std::size_t RealFft2D::ny() const { return impl_->ny; }

void RealFft2D::forward(std::span<const double> in, std::span<Complex> out) {
  if (in.size() != impl_->nx * impl_->ny || out.size() != half_size()) {
    throw Error("fft2d: size mismatch");
  }
  std::copy(in.begin(), in.end(), impl_->real.data);
  fftw_execute(impl_->fwd);
  std::copy_n(impl_->spec.data, out.size(), out.begin());
}

void RealFft2D::inverse(std::span<const Complex> in, std::span<double> out) {
  if (in.size() != half_size() || out.size() != impl_->nx * impl_->ny) {
    throw Error("fft2d: size mismatch");
  }
  std::copy(in.begin(), in.end(), impl_->spec.data);
  fftw_execute(impl_->inv);
  const double scale = 1.0 / static_cast<double>(impl_->nx * impl_->ny);
  const std::size_t total = impl_->nx * impl_->ny;
  for (std::size_t i = 0; i < total; ++i) out[i] = impl_->real.data[i] * scale;
}

}  // namespace breakup
