/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef DSI_TENSOR_HPP
#define DSI_TENSOR_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "dsi/common.hpp"

namespace dsi {

class Rng;

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& s);
std::string shape_str(const Shape& s);

/// Dense row-major array of 64-bit floats. The last axis varies fastest;
/// spatial fields use the layout (x, y, z, channel).
struct Tensor {
  Shape shape;
  std::vector<double> values;
  bool requires_grad = false;

  Tensor() = default;
  Tensor(Shape s, std::vector<double> v);

  static Tensor zeros(Shape s);
  static Tensor full(Shape s, double v);
  static Tensor from(Shape s, std::initializer_list<double> v);
  /// i.i.d. uniform in [lo, hi).
  static Tensor uniform(Shape s, Rng& rng, double lo, double hi);
  /// i.i.d. standard normal.
  static Tensor normal(Shape s, Rng& rng);

  std::size_t size() const { return values.size(); }
  std::size_t rank() const { return shape.size(); }
  double* data() { return values.data(); }
  const double* data() const { return values.data(); }

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  /// Multi-index access; slow, intended for tests and setup code.
  double& at(std::initializer_list<std::size_t> idx);
  double at(std::initializer_list<std::size_t> idx) const;

  bool all_finite() const;
  bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

}  // namespace dsi

#endif
