/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef DSI_CONV_KERNELS_HPP
#define DSI_CONV_KERNELS_HPP

#include <array>
#include <cstddef>

#include "dsi/tensor.hpp"

namespace dsi {

struct Stride3 {
  int x = 1, y = 1, z = 1;
  bool operator==(const Stride3&) const = default;
};

/// Output extent of a zero-padded ("same") strided correlation.
inline std::size_t conv_out_extent(std::size_t n, int stride) {
  return (n + static_cast<std::size_t>(stride) - 1) /
         static_cast<std::size_t>(stride);
}

/// Left zero-padding so that stride-1 output extents equal input extents.
std::array<long, 3> conv_padding(const std::array<std::size_t, 3>& in,
                                 const std::array<std::size_t, 3>& out,
                                 const std::array<std::size_t, 3>& k,
                                 Stride3 s);

// Low-level strided 3-D correlation kernels over channels-last storage.
// in:  (nx, ny, nz, ci)   kernel: (kx, ky, kz, ci, co)   out: (ox, oy, oz, co)
// All three accumulate (+=) so gate contributions can be stacked; callers
// zero the destination first when needed.

void conv_accumulate(const double* in, const std::array<std::size_t, 3>& nd,
                     std::size_t ci, const double* ker,
                     const std::array<std::size_t, 3>& kd, std::size_t co,
                     Stride3 s, double* out,
                     const std::array<std::size_t, 3>& od);

/// Adjoint of conv_accumulate with respect to its input.
void conv_backward_input(const double* dout,
                         const std::array<std::size_t, 3>& od, std::size_t co,
                         const double* ker, const std::array<std::size_t, 3>& kd,
                         std::size_t ci, Stride3 s, double* din,
                         const std::array<std::size_t, 3>& nd);

/// Adjoint of conv_accumulate with respect to its kernel.
void conv_backward_kernel(const double* in, const std::array<std::size_t, 3>& nd,
                          std::size_t ci, const double* dout,
                          const std::array<std::size_t, 3>& od, std::size_t co,
                          Stride3 s, double* dker,
                          const std::array<std::size_t, 3>& kd);

// Tensor-level wrappers used by the tape and the convLSTM cell.

void check_conv_args(const Tensor& input, const Tensor& kernel, Stride3 s);
Shape conv_output_shape(const Shape& input, const Shape& kernel, Stride3 s);
Shape conv_transpose_output_shape(const Shape& input, const Shape& kernel,
                                  Stride3 s);

Tensor conv3d_value(const Tensor& input, const Tensor& kernel, Stride3 s);
Tensor conv3d_transpose_value(const Tensor& input, const Tensor& kernel,
                              Stride3 s);

}  // namespace dsi

#endif
