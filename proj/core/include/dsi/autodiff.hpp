/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef DSI_AUTODIFF_HPP
#define DSI_AUTODIFF_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "dsi/conv_kernels.hpp"
#include "dsi/tensor.hpp"

namespace dsi {

/// Reverse-mode tape. Operations append nodes in topological order (every
/// input id precedes its consumers); backward() replays the recorded rules
/// in reverse. A tape is confined to one thread of execution.
class Tape {
 public:
  using NodeId = std::int32_t;
  /// Called with the tape and the node's own id; reads grad(self) and
  /// accumulates into the grads of the node's inputs.
  using BackwardFn = std::function<void(Tape&, NodeId)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  NodeId leaf(Tensor value, bool requires_grad = false);

  // Elementwise.
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId mul(NodeId a, NodeId b);
  NodeId scale(NodeId a, double c);
  NodeId sigmoid(NodeId a);
  NodeId tanh_act(NodeId a);
  NodeId log_op(NodeId a);
  /// Clamp with pass-through gradient strictly inside [lo, hi].
  NodeId clamp(NodeId a, double lo, double hi);

  // Reductions to scalar.
  NodeId sum(NodeId a);
  NodeId mean(NodeId a);
  /// Sum of squared differences, fused to avoid materializing a - b.
  NodeId sse(NodeId a, NodeId b);

  // Linear algebra.
  /// x: (n), w: (n, m) -> (m)
  NodeId matvec(NodeId x, NodeId w);
  /// bias broadcast over the trailing (channel) axis.
  NodeId add_channel_bias(NodeId a, NodeId bias);

  // Convolutions (channels-last, zero "same" padding).
  NodeId conv3d(NodeId input, NodeId kernel, Stride3 stride);
  NodeId conv3d_transpose(NodeId input, NodeId kernel, Stride3 stride);

  // Structure.
  NodeId reshape(NodeId a, Shape shape);
  /// a has leading extent `count`; returns the `index`-th slab.
  NodeId chunk(NodeId a, std::size_t index, std::size_t count);

  /// Appends a node with a caller-supplied backward rule.
  NodeId custom(Tensor value, std::vector<NodeId> inputs, BackwardFn backward);

  /// Accumulates gradients for every recorded node reachable from `loss`,
  /// which must be scalar.
  void backward(NodeId loss);

  const Tensor& value(NodeId id) const { return nodes_[check(id)].value; }
  bool requires_grad(NodeId id) const {
    return nodes_[check(id)].requires_grad;
  }
  /// Gradient of the last backward() target w.r.t. node id; zeros when the
  /// node is disconnected from the loss.
  const Tensor& grad(NodeId id);
  /// Mutable gradient buffer (materialized on demand); used by backward rules.
  Tensor& grad_buffer(NodeId id);
  bool grad_touched(NodeId id) const {
    return !nodes_[check(id)].grad.values.empty();
  }

  std::size_t num_nodes() const { return nodes_.size(); }
  const std::vector<NodeId>& inputs_of(NodeId id) const {
    return nodes_[check(id)].inputs;
  }

 private:
  struct Node {
    Tensor value;
    Tensor grad;  // empty until touched
    std::vector<NodeId> inputs;
    BackwardFn backward;
    bool requires_grad = false;
  };

  NodeId push(Tensor value, std::vector<NodeId> inputs, BackwardFn backward);
  std::size_t check(NodeId id) const;
  bool any_requires_grad(const std::vector<NodeId>& ids) const;

  std::vector<Node> nodes_;
};

}  // namespace dsi

#endif
