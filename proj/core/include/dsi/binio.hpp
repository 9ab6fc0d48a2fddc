/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef DSI_BINIO_HPP
#define DSI_BINIO_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "dsi/common.hpp"

namespace dsi {

// All binary artifacts are little-endian on disk.

inline void write_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint64_t read_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  require(is.good(), "unexpected end of file while reading u64");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

inline void write_f64(std::ostream& os, double d) {
  write_u64(os, std::bit_cast<std::uint64_t>(d));
}

inline double read_f64(std::istream& is) {
  return std::bit_cast<double>(read_u64(is));
}

inline void write_f64_array(std::ostream& os, const double* v, std::size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(v),
             static_cast<std::streamsize>(n * sizeof(double)));
  } else {
    for (std::size_t i = 0; i < n; ++i) write_f64(os, v[i]);
  }
}

inline void read_f64_array(std::istream& is, double* v, std::size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    is.read(reinterpret_cast<char*>(v),
            static_cast<std::streamsize>(n * sizeof(double)));
    require(is.good(), "unexpected end of file while reading doubles");
  } else {
    for (std::size_t i = 0; i < n; ++i) v[i] = read_f64(is);
  }
}

inline void write_magic(std::ostream& os, const char magic[4]) {
  os.write(magic, 4);
}

inline void expect_magic(std::istream& is, const char magic[4],
                         const std::string& what) {
  char buf[4];
  is.read(buf, 4);
  require(is.good() && std::memcmp(buf, magic, 4) == 0,
          "bad magic: not a " + what + " file");
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  require(os.good(), "cannot open for writing: " + path);
  return os;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), "cannot open for reading: " + path);
  return is;
}

}  // namespace dsi

#endif
