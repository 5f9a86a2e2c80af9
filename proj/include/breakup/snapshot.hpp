#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>

#include "breakup/field.hpp"

namespace breakup {

/// Binary snapshot layout, all little-endian:
///
///   char[8]   magic "BRKSNAP1"
///   u32       version (1)
///   u32       dtype: 0 real field, 1 complex spectrum (1D full / 2D half)
///   u32       ndim (1 or 2)
///   u32       reserved (0)
///   u64[ndim] grid points per axis
///   f64[ndim] L per axis
///   f64       time
///   u64       config hash
///   payload   row-major f64 values, or interleaved (re, im) f64 pairs
struct SnapshotMeta {
  double t = 0.0;
  std::uint64_t config_hash = 0;
};

struct Snapshot {
  std::variant<Field1D, Field2D, Spectrum1D, Spectrum2D> data;
  SnapshotMeta meta;
};

void write_snapshot(const std::filesystem::path& path, const Field1D& f, const SnapshotMeta& meta);
void write_snapshot(const std::filesystem::path& path, const Field2D& f, const SnapshotMeta& meta);
void write_snapshot(const std::filesystem::path& path, const Spectrum1D& v, const SnapshotMeta& meta);
void write_snapshot(const std::filesystem::path& path, const Spectrum2D& v, const SnapshotMeta& meta);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Columns x,u.
void write_csv(const std::filesystem::path& path, const Field1D& f);
/// Columns k,re,im,abs over all modes in ascending k.
void write_csv(const std::filesystem::path& path, const Spectrum1D& v);

}  // namespace breakup
