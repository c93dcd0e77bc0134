#pragma once

#include <filesystem>
#include <iosfwd>

#include "glasso/model.hpp"

namespace glasso {

/// SIX1 layout (little-endian): "SIX1", u32 n, u32 p, u32 G, f64 sigma,
/// u64 seed, embedded BDX1 dictionary, then p f64 truth coefficients,
/// n f64 noise, n f64 observations.
void write_six(std::ostream& out, const SyntheticInstance& inst);
SyntheticInstance read_six(std::istream& in);
void save_six(const std::filesystem::path& path, const SyntheticInstance& inst);
SyntheticInstance load_six(const std::filesystem::path& path);

/// Frame sequence from an external simulator. data holds frame t, pixel
/// (r, c) at t*rows*cols + r*cols + c, which is the observation layout the
/// demixing dictionary expects.
struct Wavefield {
  Index rows = 0;
  Index cols = 0;
  Index frames = 0;
  Vector data;
};

/// WFD1 layout (little-endian): "WFD1", u32 rows, u32 cols, u32 T, then
/// T frames of rows*cols f64 row-major.
void write_wfd(std::ostream& out, const Wavefield& w);
Wavefield read_wfd(std::istream& in);
void save_wfd(const std::filesystem::path& path, const Wavefield& w);
Wavefield load_wfd(const std::filesystem::path& path);

/// EST1 sidecar: "EST1", u32 p, p f64 entries.
void save_estimate(const std::filesystem::path& path, const Vector& v);
Vector load_estimate(const std::filesystem::path& path);

}  // namespace glasso
