/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "dsi/autodiff.hpp"

#include <cmath>

namespace dsi {

std::size_t Tape::check(NodeId id) const {
  require(id >= 0 && static_cast<std::size_t>(id) < nodes_.size(),
          "invalid tape node id");
  return static_cast<std::size_t>(id);
}

bool Tape::any_requires_grad(const std::vector<NodeId>& ids) const {
  for (NodeId id : ids)
    if (nodes_[check(id)].requires_grad) return true;
  return false;
}

Tape::NodeId Tape::push(Tensor value, std::vector<NodeId> inputs,
                        BackwardFn backward) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = any_requires_grad(inputs);
  n.inputs = std::move(inputs);
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

Tape::NodeId Tape::leaf(Tensor value, bool requires_grad) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

Tensor& Tape::grad_buffer(NodeId id) {
  Node& n = nodes_[check(id)];
  if (n.grad.values.empty()) n.grad = Tensor::zeros(n.value.shape);
  return n.grad;
}

const Tensor& Tape::grad(NodeId id) { return grad_buffer(id); }

Tape::NodeId Tape::add(NodeId a, NodeId b) {
  require_dims(value(a).same_shape(value(b)), "add: shape mismatch");
  Tensor out = value(a);
  const Tensor& vb = value(b);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += vb[i];
  return push(std::move(out), {a, b}, [a, b](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i];
    }
  });
}

Tape::NodeId Tape::sub(NodeId a, NodeId b) {
  require_dims(value(a).same_shape(value(b)), "sub: shape mismatch");
  Tensor out = value(a);
  const Tensor& vb = value(b);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= vb[i];
  return push(std::move(out), {a, b}, [a, b](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
    }
  });
}

Tape::NodeId Tape::mul(NodeId a, NodeId b) {
  require_dims(value(a).same_shape(value(b)), "mul: shape mismatch");
  Tensor out = value(a);
  const Tensor& vb = value(b);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= vb[i];
  return push(std::move(out), {a, b}, [a, b](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& va = t.value(a);
    const Tensor& vb2 = t.value(b);
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * vb2[i];
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * va[i];
    }
  });
}

Tape::NodeId Tape::scale(NodeId a, double c) {
  Tensor out = value(a);
  for (double& v : out.values) v *= c;
  return push(std::move(out), {a}, [a, c](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    Tensor& ga = t.grad_buffer(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += c * g[i];
  });
}

Tape::NodeId Tape::sigmoid(NodeId a) {
  Tensor out = value(a);
  for (double& v : out.values) v = 1.0 / (1.0 + std::exp(-v));
  return push(std::move(out), {a}, [a](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& y = t.value(self);
    Tensor& ga = t.grad_buffer(a);
    for (std::size_t i = 0; i < g.size(); ++i)
      ga[i] += g[i] * y[i] * (1.0 - y[i]);
  });
}

Tape::NodeId Tape::tanh_act(NodeId a) {
  Tensor out = value(a);
  for (double& v : out.values) v = std::tanh(v);
  return push(std::move(out), {a}, [a](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& y = t.value(self);
    Tensor& ga = t.grad_buffer(a);
    for (std::size_t i = 0; i < g.size(); ++i)
      ga[i] += g[i] * (1.0 - y[i] * y[i]);
  });
}

Tape::NodeId Tape::log_op(NodeId a) {
  Tensor out = value(a);
  for (double& v : out.values) v = std::log(v);
  return push(std::move(out), {a}, [a](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& x = t.value(a);
    Tensor& ga = t.grad_buffer(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] / x[i];
  });
}

Tape::NodeId Tape::clamp(NodeId a, double lo, double hi) {
  Tensor out = value(a);
  for (double& v : out.values) v = std::min(hi, std::max(lo, v));
  return push(std::move(out), {a}, [a, lo, hi](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& x = t.value(a);
    Tensor& ga = t.grad_buffer(a);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (x[i] > lo && x[i] < hi) ga[i] += g[i];
  });
}

Tape::NodeId Tape::sum(NodeId a) {
  double s = 0.0;
  for (double v : value(a).values) s += v;
  return push(Tensor::from({1}, {s}), {a}, [a](Tape& t, NodeId self) {
    const double g = t.grad_buffer(self)[0];
    Tensor& ga = t.grad_buffer(a);
    for (double& v : ga.values) v += g;
  });
}

Tape::NodeId Tape::mean(NodeId a) {
  const double inv = 1.0 / static_cast<double>(value(a).size());
  double s = 0.0;
  for (double v : value(a).values) s += v;
  return push(Tensor::from({1}, {s * inv}), {a}, [a, inv](Tape& t, NodeId self) {
    const double g = t.grad_buffer(self)[0] * inv;
    Tensor& ga = t.grad_buffer(a);
    for (double& v : ga.values) v += g;
  });
}

Tape::NodeId Tape::sse(NodeId a, NodeId b) {
  require_dims(value(a).same_shape(value(b)), "sse: shape mismatch");
  const Tensor& va = value(a);
  const Tensor& vb = value(b);
  double s = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const double d = va[i] - vb[i];
    s += d * d;
  }
  return push(Tensor::from({1}, {s}), {a, b}, [a, b](Tape& t, NodeId self) {
    const double g = 2.0 * t.grad_buffer(self)[0];
    const Tensor& va2 = t.value(a);
    const Tensor& vb2 = t.value(b);
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < va2.size(); ++i)
        ga[i] += g * (va2[i] - vb2[i]);
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t i = 0; i < va2.size(); ++i)
        gb[i] -= g * (va2[i] - vb2[i]);
    }
  });
}

Tape::NodeId Tape::matvec(NodeId x, NodeId w) {
  const Tensor& vx = value(x);
  const Tensor& vw = value(w);
  require_dims(vx.rank() == 1 && vw.rank() == 2,
               "matvec expects x:(n) w:(n,m)");
  require_dims(vw.shape[0] == vx.shape[0], "matvec inner dimension mismatch");
  const std::size_t n = vw.shape[0], m = vw.shape[1];
  Tensor out = Tensor::zeros({m});
  for (std::size_t i = 0; i < n; ++i) {
    const double a = vx[i];
    const double* wr = vw.data() + i * m;
    for (std::size_t j = 0; j < m; ++j) out[j] += a * wr[j];
  }
  return push(std::move(out), {x, w}, [x, w, n, m](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    const Tensor& vx2 = t.value(x);
    const Tensor& vw2 = t.value(w);
    if (t.requires_grad(x)) {
      Tensor& gx = t.grad_buffer(x);
      for (std::size_t i = 0; i < n; ++i) {
        const double* wr = vw2.data() + i * m;
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += wr[j] * g[j];
        gx[i] += s;
      }
    }
    if (t.requires_grad(w)) {
      Tensor& gw = t.grad_buffer(w);
      for (std::size_t i = 0; i < n; ++i) {
        const double a = vx2[i];
        double* wr = gw.data() + i * m;
        for (std::size_t j = 0; j < m; ++j) wr[j] += a * g[j];
      }
    }
  });
}

Tape::NodeId Tape::add_channel_bias(NodeId a, NodeId bias) {
  const Tensor& va = value(a);
  const Tensor& vb = value(bias);
  require_dims(vb.rank() == 1 && !va.shape.empty() &&
                   va.shape.back() == vb.shape[0],
               "add_channel_bias: bias must match trailing axis");
  const std::size_t c = vb.shape[0];
  Tensor out = va;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += vb[i % c];
  return push(std::move(out), {a, bias}, [a, bias, c](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    }
    if (t.requires_grad(bias)) {
      Tensor& gb = t.grad_buffer(bias);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i % c] += g[i];
    }
  });
}

Tape::NodeId Tape::conv3d(NodeId input, NodeId kernel, Stride3 stride) {
  Tensor out = conv3d_value(value(input), value(kernel), stride);
  return push(std::move(out), {input, kernel},
              [input, kernel, stride](Tape& t, NodeId self) {
                const Tensor& g = t.grad_buffer(self);
                const Tensor& in = t.value(input);
                const Tensor& ker = t.value(kernel);
                const std::array<std::size_t, 3> nd{in.shape[0], in.shape[1],
                                                    in.shape[2]};
                const std::array<std::size_t, 3> od{g.shape[0], g.shape[1],
                                                    g.shape[2]};
                const std::array<std::size_t, 3> kd{ker.shape[0], ker.shape[1],
                                                    ker.shape[2]};
                if (t.requires_grad(input)) {
                  Tensor& gi = t.grad_buffer(input);
                  conv_backward_input(g.data(), od, ker.shape[4], ker.data(),
                                      kd, ker.shape[3], stride, gi.data(), nd);
                }
                if (t.requires_grad(kernel)) {
                  Tensor& gk = t.grad_buffer(kernel);
                  conv_backward_kernel(in.data(), nd, ker.shape[3], g.data(),
                                       od, ker.shape[4], stride, gk.data(), kd);
                }
              });
}

Tape::NodeId Tape::conv3d_transpose(NodeId input, NodeId kernel,
                                    Stride3 stride) {
  Tensor out = conv3d_transpose_value(value(input), value(kernel), stride);
  return push(std::move(out), {input, kernel},
              [input, kernel, stride](Tape& t, NodeId self) {
                const Tensor& g = t.grad_buffer(self);
                const Tensor& in = t.value(input);
                const Tensor& ker = t.value(kernel);
                // Forward is the conv adjoint, so the adjoint of the adjoint
                // (a plain strided conv) propagates to the input.
                const std::array<std::size_t, 3> gd{g.shape[0], g.shape[1],
                                                    g.shape[2]};
                const std::array<std::size_t, 3> id{in.shape[0], in.shape[1],
                                                    in.shape[2]};
                const std::array<std::size_t, 3> kd{ker.shape[0], ker.shape[1],
                                                    ker.shape[2]};
                if (t.requires_grad(input)) {
                  Tensor& gi = t.grad_buffer(input);
                  conv_accumulate(g.data(), gd, ker.shape[3], ker.data(), kd,
                                  ker.shape[4], stride, gi.data(), id);
                }
                if (t.requires_grad(kernel)) {
                  Tensor& gk = t.grad_buffer(kernel);
                  conv_backward_kernel(g.data(), gd, ker.shape[3], in.data(),
                                       id, ker.shape[4], stride, gk.data(), kd);
                }
              });
}

Tape::NodeId Tape::reshape(NodeId a, Shape shape) {
  require_dims(shape_numel(shape) == value(a).size(),
               "reshape: element count mismatch");
  Tensor out(std::move(shape), value(a).values);
  return push(std::move(out), {a}, [a](Tape& t, NodeId self) {
    const Tensor& g = t.grad_buffer(self);
    Tensor& ga = t.grad_buffer(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
  });
}

Tape::NodeId Tape::chunk(NodeId a, std::size_t index, std::size_t count) {
  const Tensor& va = value(a);
  require_dims(!va.shape.empty() && va.shape[0] == count && index < count,
               "chunk: bad leading extent");
  const std::size_t slab = va.size() / count;
  Shape out_shape(va.shape.begin() + 1, va.shape.end());
  std::vector<double> v(va.values.begin() + index * slab,
                        va.values.begin() + (index + 1) * slab);
  return push(Tensor(std::move(out_shape), std::move(v)), {a},
              [a, index, slab](Tape& t, NodeId self) {
                const Tensor& g = t.grad_buffer(self);
                Tensor& ga = t.grad_buffer(a);
                double* dst = ga.data() + index * slab;
                for (std::size_t i = 0; i < slab; ++i) dst[i] += g[i];
              });
}

Tape::NodeId Tape::custom(Tensor value, std::vector<NodeId> inputs,
                          BackwardFn backward) {
  for (NodeId id : inputs) check(id);
  return push(std::move(value), std::move(inputs), std::move(backward));
}

void Tape::backward(NodeId loss) {
  const std::size_t li = check(loss);
  require(nodes_[li].value.size() == 1,
          "backward requires a scalar loss node");
  grad_buffer(loss)[0] = 1.0;
  for (std::int64_t id = static_cast<std::int64_t>(li); id >= 0; --id) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (!n.requires_grad || !n.backward || n.grad.values.empty()) continue;
    n.backward(*this, static_cast<NodeId>(id));
  }
}

}  // namespace dsi
