#include "breakup/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <numeric>

namespace breakup {

namespace {

constexpr char kMagic[8] = {'B', 'R', 'K', 'S', 'N', 'A', 'P', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kReal = 0;
constexpr std::uint32_t kComplex = 1;

template <typename T>
T to_little(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    std::reverse(bytes, bytes + sizeof(T));
    std::memcpy(&value, bytes, sizeof(T));
  }
  return value;
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("snapshot: cannot open '" + path.string() + "' for writing");
  }
  template <typename T>
  void put(T value) {
    value = to_little(value);
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }
  void put_bytes(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
  void finish(const std::filesystem::path& path) {
    out_.flush();
    if (!out_) throw Error("snapshot: write to '" + path.string() + "' failed");
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary), path_(path) {
    if (!in_) throw Error("snapshot: cannot open '" + path.string() + "'");
  }
  template <typename T>
  T get() {
    T value;
    in_.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in_) throw Error("snapshot: '" + path_.string() + "' is truncated");
    return to_little(value);
  }
  void get_bytes(char* p, std::size_t n) {
    in_.read(p, static_cast<std::streamsize>(n));
    if (!in_) throw Error("snapshot: '" + path_.string() + "' is truncated");
  }

 private:
  std::ifstream in_;
  std::filesystem::path path_;
};

void header(Writer& w, std::uint32_t dtype, const std::vector<const Grid1D*>& axes, const SnapshotMeta& meta) {
  w.put_bytes(kMagic, sizeof(kMagic));
  w.put(kVersion);
  w.put(dtype);
  w.put(static_cast<std::uint32_t>(axes.size()));
  w.put(std::uint32_t{0});
  for (const Grid1D* g : axes) w.put(static_cast<std::uint64_t>(g->size()));
  for (const Grid1D* g : axes) w.put(g->half_period());
  w.put(meta.t);
  w.put(meta.config_hash);
}

void write_reals(Writer& w, const std::vector<double>& values) {
  for (double v : values) w.put(v);
}

void write_complex(Writer& w, const std::vector<Complex>& values) {
  for (const Complex& z : values) {
    w.put(z.real());
    w.put(z.imag());
  }
}

std::vector<double> read_reals(Reader& r, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = r.get<double>();
  return out;
}

std::vector<Complex> read_complex(Reader& r, std::size_t n) {
  std::vector<Complex> out(n);
  for (auto& z : out) {
    const double re = r.get<double>();
    const double im = r.get<double>();
    z = Complex(re, im);
  }
  return out;
}

std::ofstream open_text(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << std::setprecision(17);
  return out;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const Field1D& f, const SnapshotMeta& meta) {
  Writer w(path);
  header(w, kReal, {&f.grid}, meta);
  write_reals(w, f.values);
  w.finish(path);
}

void write_snapshot(const std::filesystem::path& path, const Field2D& f, const SnapshotMeta& meta) {
  Writer w(path);
  header(w, kReal, {&f.grid.x(), &f.grid.y()}, meta);
  write_reals(w, f.values);
  w.finish(path);
}

void write_snapshot(const std::filesystem::path& path, const Spectrum1D& v, const SnapshotMeta& meta) {
  Writer w(path);
  header(w, kComplex, {&v.grid}, meta);
  write_complex(w, v.coeffs);
  w.finish(path);
}

void write_snapshot(const std::filesystem::path& path, const Spectrum2D& v, const SnapshotMeta& meta) {
  Writer w(path);
  header(w, kComplex, {&v.grid.x(), &v.grid.y()}, meta);
  write_complex(w, v.coeffs);
  w.finish(path);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  Reader r(path);
  char magic[8];
  r.get_bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error("snapshot: '" + path.string() + "' has a bad magic number");
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kVersion) throw Error("snapshot: unsupported version " + std::to_string(version));
  const auto dtype = r.get<std::uint32_t>();
  const auto ndim = r.get<std::uint32_t>();
  r.get<std::uint32_t>();
  if ((ndim != 1 && ndim != 2) || (dtype != kReal && dtype != kComplex)) {
    throw Error("snapshot: '" + path.string() + "' has an invalid header");
  }
  std::vector<std::uint64_t> dims(ndim);
  std::vector<double> ls(ndim);
  for (auto& d : dims) d = r.get<std::uint64_t>();
  for (auto& l : ls) l = r.get<double>();
  Snapshot snap;
  snap.meta.t = r.get<double>();
  snap.meta.config_hash = r.get<std::uint64_t>();
  if (ndim == 1) {
    const Grid1D g(dims[0], ls[0]);
    if (dtype == kReal) {
      snap.data = Field1D{g, read_reals(r, g.size())};
    } else {
      snap.data = Spectrum1D{g, read_complex(r, g.size())};
    }
  } else {
    const Grid2D g(dims[0], dims[1], ls[0], ls[1]);
    if (dtype == kReal) {
      snap.data = Field2D{g, read_reals(r, g.size())};
    } else {
      snap.data = Spectrum2D{g, read_complex(r, g.nx() * g.ny_half())};
    }
  }
  return snap;
}

void write_csv(const std::filesystem::path& path, const Field1D& f) {
  auto out = open_text(path);
  out << "x,u\n";
  for (std::size_t i = 0; i < f.grid.size(); ++i) out << f.grid.x(i) << ',' << f.values[i] << '\n';
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

void write_csv(const std::filesystem::path& path, const Spectrum1D& v) {
  auto out = open_text(path);
  out << "k,re,im,abs\n";
  const std::size_t n = v.grid.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v.grid.mode(a) < v.grid.mode(b); });
  for (std::size_t j : order) {
    const Complex z = v.coeffs[j];
    out << v.grid.wavenumber(j) << ',' << z.real() << ',' << z.imag() << ',' << std::abs(z) << '\n';
  }
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace breakup
