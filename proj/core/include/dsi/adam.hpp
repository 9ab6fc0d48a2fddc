/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef DSI_ADAM_HPP
#define DSI_ADAM_HPP

#include <span>
#include <vector>

#include "dsi/tensor.hpp"

namespace dsi {

/// Bias-corrected adaptive-moment state for one group of parameters.
/// Moment accumulators mirror the parameter shapes; the step counter
/// increases by exactly one per update.
struct AdamState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t step_count = 0;
  std::vector<Tensor> first_moment;
  std::vector<Tensor> second_moment;
};

/// One update over a parameter group. Moment buffers are created lazily on
/// the first call and must keep matching shapes afterwards.
void adam_step(std::span<Tensor*> params, std::span<const Tensor> grads,
               AdamState& state);

}  // namespace dsi

#endif
