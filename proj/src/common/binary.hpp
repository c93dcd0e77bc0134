#pragma once

// Little-endian primitives shared by the BDX1, SIX1, WFD1 and EST1 codecs.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "glasso/error.hpp"

namespace glasso::binary {

inline void put_bytes(std::ostream& out, const void* data, std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  require(static_cast<bool>(out), ErrorCode::io_failure, "write failed");
}

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<unsigned char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<unsigned char>(value >> (8 * i));
  put_bytes(out, bytes.data(), bytes.size());
}

inline void put_u32(std::ostream& out, std::uint64_t v) {
  require(v <= 0xFFFFFFFFULL, ErrorCode::invalid_argument, "value does not fit in u32");
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(v));
}
inline void put_u64(std::ostream& out, std::uint64_t v) { put_le<std::uint64_t>(out, v); }
inline void put_f64(std::ostream& out, double v) { put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v)); }

inline void put_f64_array(std::ostream& out, const double* v, std::size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    put_bytes(out, v, n * sizeof(double));
  } else {
    for (std::size_t i = 0; i < n; ++i) put_f64(out, v[i]);
  }
}

inline void get_bytes(std::istream& in, void* data, std::size_t n, std::string_view what) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  require(in.gcount() == static_cast<std::streamsize>(n), ErrorCode::format_error,
          "truncated input while reading " + std::string(what));
}

template <typename U>
U get_le(std::istream& in, std::string_view what) {
  std::array<unsigned char, sizeof(U)> bytes{};
  get_bytes(in, bytes.data(), bytes.size(), what);
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

inline std::uint32_t get_u32(std::istream& in, std::string_view what) {
  return get_le<std::uint32_t>(in, what);
}
inline std::uint64_t get_u64(std::istream& in, std::string_view what) {
  return get_le<std::uint64_t>(in, what);
}
inline double get_f64(std::istream& in, std::string_view what) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in, what));
}

inline void get_f64_array(std::istream& in, double* v, std::size_t n, std::string_view what) {
  if constexpr (std::endian::native == std::endian::little) {
    get_bytes(in, v, n * sizeof(double), what);
  } else {
    for (std::size_t i = 0; i < n; ++i) v[i] = get_f64(in, what);
  }
}

inline void expect_magic(std::istream& in, std::string_view magic) {
  std::array<char, 4> got{};
  get_bytes(in, got.data(), 4, "magic");
  require(std::string_view(got.data(), 4) == magic, ErrorCode::format_error,
          "bad magic, expected " + std::string(magic));
}

inline void put_magic(std::ostream& out, std::string_view magic) { put_bytes(out, magic.data(), 4); }

}  // namespace glasso::binary
