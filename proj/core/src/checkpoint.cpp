/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "dsi/checkpoint.hpp"

#include "dsi/binio.hpp"

namespace dsi {

namespace {
constexpr char kMagic[4] = {'D', 'S', 'I', 'W'};
constexpr unsigned char kVersion = 1;
}  // namespace

void NamedArrays::set(const std::string& name, Tensor t) {
  for (auto& [n, v] : items) {
    if (n == name) {
      v = std::move(t);
      return;
    }
  }
  items.emplace_back(name, std::move(t));
}

const Tensor* NamedArrays::find(const std::string& name) const {
  for (const auto& [n, v] : items)
    if (n == name) return &v;
  return nullptr;
}

const Tensor& NamedArrays::get(const std::string& name) const {
  const Tensor* t = find(name);
  require(t != nullptr, "checkpoint is missing array '" + name + "'");
  return *t;
}

void write_checkpoint(const std::string& path, const NamedArrays& arrays) {
  auto os = open_output(path);
  write_magic(os, kMagic);
  os.put(static_cast<char>(kVersion));
  write_u64(os, arrays.items.size());
  for (const auto& [name, t] : arrays.items) {
    write_u64(os, name.size());
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_u64(os, t.rank());
    for (std::size_t e : t.shape) write_u64(os, e);
    write_f64_array(os, t.data(), t.size());
  }
  require(os.good(), "error while writing checkpoint " + path);
}

NamedArrays read_checkpoint(const std::string& path) {
  auto is = open_input(path);
  expect_magic(is, kMagic, "DSIW checkpoint");
  const int version = is.get();
  require(version == kVersion, "unsupported checkpoint version in " + path);
  const std::uint64_t count = read_u64(is);
  NamedArrays arrays;
  arrays.items.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t name_len = read_u64(is);
    std::string name(name_len, '\0');
    is.read(name.data(), static_cast<std::streamsize>(name_len));
    const std::uint64_t rank = read_u64(is);
    Shape shape(rank);
    for (auto& e : shape) e = read_u64(is);
    Tensor t = Tensor::zeros(shape);
    read_f64_array(is, t.data(), t.size());
    arrays.items.emplace_back(std::move(name), std::move(t));
  }
  require(is.good(), "error while reading checkpoint " + path);
  return arrays;
}

}  // namespace dsi
