/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "dsi/tensor.hpp"

#include <cmath>
#include <sstream>

#include "dsi/rng.hpp"

namespace dsi {

std::size_t shape_numel(const Shape& s) {
  std::size_t n = 1;
  for (std::size_t e : s) {
    require_dims(e > 0, "tensor extents must be positive");
    n *= e;
  }
  return n;
}

std::string shape_str(const Shape& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ')';
  return os.str();
}

Tensor::Tensor(Shape s, std::vector<double> v)
    : shape(std::move(s)), values(std::move(v)) {
  require_dims(shape_numel(shape) == values.size(),
               "tensor value count does not match shape " + shape_str(shape));
}

Tensor Tensor::zeros(Shape s) {
  const std::size_t n = shape_numel(s);
  return Tensor(std::move(s), std::vector<double>(n, 0.0));
}

Tensor Tensor::full(Shape s, double v) {
  const std::size_t n = shape_numel(s);
  return Tensor(std::move(s), std::vector<double>(n, v));
}

Tensor Tensor::from(Shape s, std::initializer_list<double> v) {
  return Tensor(std::move(s), std::vector<double>(v));
}

Tensor Tensor::uniform(Shape s, Rng& rng, double lo, double hi) {
  Tensor t = zeros(std::move(s));
  for (auto& x : t.values) x = rng.uniform(lo, hi);
  return t;
}

Tensor Tensor::normal(Shape s, Rng& rng) {
  Tensor t = zeros(std::move(s));
  for (auto& x : t.values) x = rng.normal();
  return t;
}

namespace {
std::size_t flat_index(const Shape& shape,
                       std::initializer_list<std::size_t> idx) {
  require_dims(idx.size() == shape.size(), "index rank mismatch");
  std::size_t flat = 0;
  auto it = idx.begin();
  for (std::size_t d = 0; d < shape.size(); ++d, ++it) {
    require_dims(*it < shape[d], "index out of range");
    flat = flat * shape[d] + *it;
  }
  return flat;
}
}  // namespace

double& Tensor::at(std::initializer_list<std::size_t> idx) {
  return values[flat_index(shape, idx)];
}

double Tensor::at(std::initializer_list<std::size_t> idx) const {
  return values[flat_index(shape, idx)];
}

bool Tensor::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace dsi
