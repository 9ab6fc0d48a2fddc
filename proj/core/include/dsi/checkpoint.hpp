/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef DSI_CHECKPOINT_HPP
#define DSI_CHECKPOINT_HPP

#include <string>
#include <utility>
#include <vector>

#include "dsi/tensor.hpp"

namespace dsi {

/// Ordered collection of named arrays, the payload of a weight checkpoint.
struct NamedArrays {
  std::vector<std::pair<std::string, Tensor>> items;

  void set(const std::string& name, Tensor t);
  const Tensor* find(const std::string& name) const;
  /// Throws if absent.
  const Tensor& get(const std::string& name) const;
};

// Weight checkpoint container. Layout: magic "DSIW", one version byte, u64
// array count; per array: u64 name length, UTF-8 name, u64 rank, u64 extents,
// then the values as little-endian 64-bit floats.

void write_checkpoint(const std::string& path, const NamedArrays& arrays);
NamedArrays read_checkpoint(const std::string& path);

}  // namespace dsi

#endif
