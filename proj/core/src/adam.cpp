/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "dsi/adam.hpp"

#include <cmath>

namespace dsi {

void adam_step(std::span<Tensor*> params, std::span<const Tensor> grads,
               AdamState& state) {
  require_dims(params.size() == grads.size(),
               "adam_step: parameter/gradient count mismatch");
  if (state.first_moment.empty()) {
    state.first_moment.reserve(params.size());
    state.second_moment.reserve(params.size());
    for (const Tensor* p : params) {
      state.first_moment.push_back(Tensor::zeros(p->shape));
      state.second_moment.push_back(Tensor::zeros(p->shape));
    }
  }
  require_dims(state.first_moment.size() == params.size(),
               "adam_step: state does not match parameter group");

  state.step_count += 1;
  const double b1 = state.beta1, b2 = state.beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(state.step_count));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(state.step_count));
  const double lr = state.learning_rate;
  const double eps = state.epsilon;

  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor& p = *params[k];
    const Tensor& g = grads[k];
    require_dims(p.same_shape(g) && p.same_shape(state.first_moment[k]),
                 "adam_step: shape mismatch in parameter group");
    double* m = state.first_moment[k].data();
    double* v = state.second_moment[k].data();
    double* x = p.data();
    const double* gr = g.data();
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * gr[i];
      v[i] = b2 * v[i] + (1.0 - b2) * gr[i] * gr[i];
      const double mhat = m[i] / corr1;
      const double vhat = v[i] / corr2;
      x[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

}  // namespace dsi
