/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef DSI_COMMON_HPP
#define DSI_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace dsi {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Tensor/array extent mismatches.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Invalid user-supplied configuration (bad ranges, inconsistent schedule, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Numerical failures (non-convergence, indefinite covariance, ...).
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

[[noreturn]] void fail(const std::string& msg);

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}
inline void require_config(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}
inline void require_dims(bool cond, const std::string& msg) {
  if (!cond) throw DimensionError(msg);
}

/// Runs fn(i) for i in [0, n). With workers <= 1 the calls happen inline, in
/// order. Otherwise items are pulled from a shared counter by a small thread
/// pool; fn must not touch shared mutable state except through index i.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

/// printf-style helper returning std::string ("%.17g" round-trips doubles).
std::string format_double(double v);

}  // namespace dsi

#endif
