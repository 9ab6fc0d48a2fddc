/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef DSI_RNG_HPP
#define DSI_RNG_HPP

#include <cstdint>
#include <string_view>

namespace dsi {

/// Deterministic pseudo-random stream (xoshiro256** seeded via splitmix64).
/// Self-contained so that draws are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [a, b).
  double uniform(double a, double b);
  /// Standard normal via Box-Muller; the paired draw is cached.
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Expands one global seed into independent per-stage / per-item sub-seeds.
/// Counter-based: the same (seed, domain, counter) triple always yields the
/// same stream, so stages can be re-run in isolation.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view domain,
                          std::uint64_t counter);

}  // namespace dsi

#endif
