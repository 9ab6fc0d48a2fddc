/*
 * (C) Copyright 2026 the dsi authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "dsi/conv_kernels.hpp"

#include <vector>

namespace dsi {

std::array<long, 3> conv_padding(const std::array<std::size_t, 3>& in,
                                 const std::array<std::size_t, 3>& out,
                                 const std::array<std::size_t, 3>& k,
                                 Stride3 s) {
  const int strides[3] = {s.x, s.y, s.z};
  std::array<long, 3> pad{};
  for (int a = 0; a < 3; ++a) {
    const long total = std::max<long>(
        0, (static_cast<long>(out[a]) - 1) * strides[a] +
               static_cast<long>(k[a]) - static_cast<long>(in[a]));
    pad[a] = total / 2;
  }
  return pad;
}

void conv_accumulate(const double* in, const std::array<std::size_t, 3>& nd,
                     std::size_t ci, const double* ker,
                     const std::array<std::size_t, 3>& kd, std::size_t co,
                     Stride3 s, double* out,
                     const std::array<std::size_t, 3>& od) {
  const auto pad = conv_padding(nd, od, kd, s);
  const long nx = static_cast<long>(nd[0]), ny = static_cast<long>(nd[1]),
             nz = static_cast<long>(nd[2]);
  const std::size_t in_sy = nd[2] * ci, in_sx = nd[1] * in_sy;
  const std::size_t kt_stride = ci * co;  // one tap = (ci, co) block
  std::vector<double> accbuf(co);
  double* acc = accbuf.data();

  for (std::size_t ox = 0; ox < od[0]; ++ox) {
    const long ix0 = static_cast<long>(ox) * s.x - pad[0];
    for (std::size_t oy = 0; oy < od[1]; ++oy) {
      const long iy0 = static_cast<long>(oy) * s.y - pad[1];
      for (std::size_t oz = 0; oz < od[2]; ++oz) {
        const long iz0 = static_cast<long>(oz) * s.z - pad[2];
        for (std::size_t c = 0; c < co; ++c) acc[c] = 0.0;
        for (std::size_t kx = 0; kx < kd[0]; ++kx) {
          const long ix = ix0 + static_cast<long>(kx);
          if (ix < 0 || ix >= nx) continue;
          for (std::size_t ky = 0; ky < kd[1]; ++ky) {
            const long iy = iy0 + static_cast<long>(ky);
            if (iy < 0 || iy >= ny) continue;
            for (std::size_t kz = 0; kz < kd[2]; ++kz) {
              const long iz = iz0 + static_cast<long>(kz);
              if (iz < 0 || iz >= nz) continue;
              const double* ip =
                  in + static_cast<std::size_t>(ix) * in_sx +
                  static_cast<std::size_t>(iy) * in_sy +
                  static_cast<std::size_t>(iz) * ci;
              const double* kp =
                  ker + ((kx * kd[1] + ky) * kd[2] + kz) * kt_stride;
              for (std::size_t c1 = 0; c1 < ci; ++c1) {
                const double a = ip[c1];
                const double* kr = kp + c1 * co;
                for (std::size_t c2 = 0; c2 < co; ++c2) acc[c2] += a * kr[c2];
              }
            }
          }
        }
        double* op = out + ((ox * od[1] + oy) * od[2] + oz) * co;
        for (std::size_t c = 0; c < co; ++c) op[c] += acc[c];
      }
    }
  }
}

void conv_backward_input(const double* dout,
                         const std::array<std::size_t, 3>& od, std::size_t co,
                         const double* ker, const std::array<std::size_t, 3>& kd,
                         std::size_t ci, Stride3 s, double* din,
                         const std::array<std::size_t, 3>& nd) {
  const auto pad = conv_padding(nd, od, kd, s);
  const long ox_n = static_cast<long>(od[0]), oy_n = static_cast<long>(od[1]),
             oz_n = static_cast<long>(od[2]);
  const std::size_t out_sy = od[2] * co, out_sx = od[1] * out_sy;
  const std::size_t kt_stride = ci * co;
  std::vector<double> accbuf(ci);
  double* acc = accbuf.data();
  const int strides[3] = {s.x, s.y, s.z};

  // For input cell j and tap k the producing output index is
  // o = (j + pad - k) / stride, valid when the division is exact.
  for (std::size_t jx = 0; jx < nd[0]; ++jx) {
    for (std::size_t jy = 0; jy < nd[1]; ++jy) {
      for (std::size_t jz = 0; jz < nd[2]; ++jz) {
        for (std::size_t c = 0; c < ci; ++c) acc[c] = 0.0;
        for (std::size_t kx = 0; kx < kd[0]; ++kx) {
          const long tx = static_cast<long>(jx) + pad[0] - static_cast<long>(kx);
          if (tx < 0 || tx % strides[0]) continue;
          const long ox = tx / strides[0];
          if (ox >= ox_n) continue;
          for (std::size_t ky = 0; ky < kd[1]; ++ky) {
            const long ty =
                static_cast<long>(jy) + pad[1] - static_cast<long>(ky);
            if (ty < 0 || ty % strides[1]) continue;
            const long oy = ty / strides[1];
            if (oy >= oy_n) continue;
            for (std::size_t kz = 0; kz < kd[2]; ++kz) {
              const long tz =
                  static_cast<long>(jz) + pad[2] - static_cast<long>(kz);
              if (tz < 0 || tz % strides[2]) continue;
              const long oz = tz / strides[2];
              if (oz >= oz_n) continue;
              const double* gp = dout + static_cast<std::size_t>(ox) * out_sx +
                                 static_cast<std::size_t>(oy) * out_sy +
                                 static_cast<std::size_t>(oz) * co;
              const double* kp =
                  ker + ((kx * kd[1] + ky) * kd[2] + kz) * kt_stride;
              for (std::size_t c1 = 0; c1 < ci; ++c1) {
                const double* kr = kp + c1 * co;
                double sum = 0.0;
                for (std::size_t c2 = 0; c2 < co; ++c2) sum += gp[c2] * kr[c2];
                acc[c1] += sum;
              }
            }
          }
        }
        double* dp = din + ((jx * nd[1] + jy) * nd[2] + jz) * ci;
        for (std::size_t c = 0; c < ci; ++c) dp[c] += acc[c];
      }
    }
  }
}

void conv_backward_kernel(const double* in, const std::array<std::size_t, 3>& nd,
                          std::size_t ci, const double* dout,
                          const std::array<std::size_t, 3>& od, std::size_t co,
                          Stride3 s, double* dker,
                          const std::array<std::size_t, 3>& kd) {
  const auto pad = conv_padding(nd, od, kd, s);
  const long nx = static_cast<long>(nd[0]), ny = static_cast<long>(nd[1]),
             nz = static_cast<long>(nd[2]);
  const std::size_t in_sy = nd[2] * ci, in_sx = nd[1] * in_sy;
  const std::size_t kt_stride = ci * co;

  for (std::size_t ox = 0; ox < od[0]; ++ox) {
    const long ix0 = static_cast<long>(ox) * s.x - pad[0];
    for (std::size_t oy = 0; oy < od[1]; ++oy) {
      const long iy0 = static_cast<long>(oy) * s.y - pad[1];
      for (std::size_t oz = 0; oz < od[2]; ++oz) {
        const long iz0 = static_cast<long>(oz) * s.z - pad[2];
        const double* gp = dout + ((ox * od[1] + oy) * od[2] + oz) * co;
        for (std::size_t kx = 0; kx < kd[0]; ++kx) {
          const long ix = ix0 + static_cast<long>(kx);
          if (ix < 0 || ix >= nx) continue;
          for (std::size_t ky = 0; ky < kd[1]; ++ky) {
            const long iy = iy0 + static_cast<long>(ky);
            if (iy < 0 || iy >= ny) continue;
            for (std::size_t kz = 0; kz < kd[2]; ++kz) {
              const long iz = iz0 + static_cast<long>(kz);
              if (iz < 0 || iz >= nz) continue;
              const double* ip =
                  in + static_cast<std::size_t>(ix) * in_sx +
                  static_cast<std::size_t>(iy) * in_sy +
                  static_cast<std::size_t>(iz) * ci;
              double* kp = dker + ((kx * kd[1] + ky) * kd[2] + kz) * kt_stride;
              for (std::size_t c1 = 0; c1 < ci; ++c1) {
                const double a = ip[c1];
                double* kr = kp + c1 * co;
                for (std::size_t c2 = 0; c2 < co; ++c2) kr[c2] += a * gp[c2];
              }
            }
          }
        }
      }
    }
  }
}

void check_conv_args(const Tensor& input, const Tensor& kernel, Stride3 s) {
  require_dims(input.rank() == 4, "conv3d input must be rank 4 (x,y,z,c)");
  require_dims(kernel.rank() == 5,
               "conv3d kernel must be rank 5 (kx,ky,kz,ci,co)");
  require_dims(kernel.shape[0] % 2 == 1 && kernel.shape[1] % 2 == 1 &&
                   kernel.shape[2] % 2 == 1,
               "conv3d kernel extents must be odd");
  require_dims(kernel.shape[3] == input.shape[3],
               "conv3d channel mismatch: input has " +
                   std::to_string(input.shape[3]) + " channels, kernel expects " +
                   std::to_string(kernel.shape[3]));
  require(s.x >= 1 && s.y >= 1 && s.z >= 1, "conv3d stride must be >= 1");
}

Shape conv_output_shape(const Shape& input, const Shape& kernel, Stride3 s) {
  return Shape{conv_out_extent(input[0], s.x), conv_out_extent(input[1], s.y),
               conv_out_extent(input[2], s.z), kernel[4]};
}

Shape conv_transpose_output_shape(const Shape& input, const Shape& kernel,
                                  Stride3 s) {
  return Shape{input[0] * static_cast<std::size_t>(s.x),
               input[1] * static_cast<std::size_t>(s.y),
               input[2] * static_cast<std::size_t>(s.z), kernel[3]};
}

Tensor conv3d_value(const Tensor& input, const Tensor& kernel, Stride3 s) {
  check_conv_args(input, kernel, s);
  Tensor out = Tensor::zeros(conv_output_shape(input.shape, kernel.shape, s));
  conv_accumulate(input.data(), {input.shape[0], input.shape[1], input.shape[2]},
                  input.shape[3], kernel.data(),
                  {kernel.shape[0], kernel.shape[1], kernel.shape[2]},
                  kernel.shape[4], s, out.data(),
                  {out.shape[0], out.shape[1], out.shape[2]});
  return out;
}

Tensor conv3d_transpose_value(const Tensor& input, const Tensor& kernel,
                              Stride3 s) {
  require_dims(input.rank() == 4, "conv3d_transpose input must be rank 4");
  require_dims(kernel.rank() == 5, "conv3d_transpose kernel must be rank 5");
  require_dims(kernel.shape[4] == input.shape[3],
               "conv3d_transpose channel mismatch: input has " +
                   std::to_string(input.shape[3]) + " channels, kernel expects " +
                   std::to_string(kernel.shape[4]));
  Tensor out =
      Tensor::zeros(conv_transpose_output_shape(input.shape, kernel.shape, s));
  conv_backward_input(input.data(),
                      {input.shape[0], input.shape[1], input.shape[2]},
                      input.shape[3], kernel.data(),
                      {kernel.shape[0], kernel.shape[1], kernel.shape[2]},
                      kernel.shape[3], s, out.data(),
                      {out.shape[0], out.shape[1], out.shape[2]});
  return out;
}

}  // namespace dsi
