// Naive reference implementations used as independent oracles in tests.
// Everything here is written as plain nested loops, deliberately sharing no
// code with the library implementations it checks.

#ifndef DSI_TESTS_ORACLES_HPP
#define DSI_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct Dims3 {
  long x, y, z;
};

// Zero-padded strided correlation, channels last. Padding follows the
// "same" rule: out = ceil(n / s), left pad = floor(((out-1)*s + k - n) / 2).
inline std::vector<double> conv3d(const std::vector<double>& in, Dims3 n,
                                  long ci, const std::vector<double>& ker,
                                  Dims3 k, long co, Dims3 s) {
  const Dims3 o{(n.x + s.x - 1) / s.x, (n.y + s.y - 1) / s.y,
                (n.z + s.z - 1) / s.z};
  auto pad = [](long nn, long oo, long kk, long ss) {
    return std::max<long>(0, (oo - 1) * ss + kk - nn) / 2;
  };
  const long px = pad(n.x, o.x, k.x, s.x);
  const long py = pad(n.y, o.y, k.y, s.y);
  const long pz = pad(n.z, o.z, k.z, s.z);
  std::vector<double> out(static_cast<std::size_t>(o.x * o.y * o.z * co), 0.0);
  for (long ox = 0; ox < o.x; ++ox)
    for (long oy = 0; oy < o.y; ++oy)
      for (long oz = 0; oz < o.z; ++oz)
        for (long c2 = 0; c2 < co; ++c2) {
          double acc = 0.0;
          for (long kx = 0; kx < k.x; ++kx)
            for (long ky = 0; ky < k.y; ++ky)
              for (long kz = 0; kz < k.z; ++kz)
                for (long c1 = 0; c1 < ci; ++c1) {
                  const long ix = ox * s.x - px + kx;
                  const long iy = oy * s.y - py + ky;
                  const long iz = oz * s.z - pz + kz;
                  if (ix < 0 || ix >= n.x || iy < 0 || iy >= n.y || iz < 0 ||
                      iz >= n.z)
                    continue;
                  const double a =
                      in[static_cast<std::size_t>(((ix * n.y + iy) * n.z + iz) *
                                                      ci +
                                                  c1)];
                  const double w = ker[static_cast<std::size_t>(
                      (((kx * k.y + ky) * k.z + kz) * ci + c1) * co + c2)];
                  acc += a * w;
                }
          out[static_cast<std::size_t>(((ox * o.y + oy) * o.z + oz) * co + c2)] =
              acc;
        }
  return out;
}

inline std::vector<double> dense(const std::vector<double>& x,
                                 const std::vector<double>& w,
                                 const std::vector<double>& b, std::size_t n,
                                 std::size_t m) {
  std::vector<double> y(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = b[j];
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * w[i * m + j];
    y[j] = acc;
  }
  return y;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// One convLSTM step evaluated with scalar loops: gate pre-activations from
// two correlations (input at the layer stride, state at stride one), then
// the elementwise gate algebra.
struct ConvLstmOracleIn {
  std::vector<double> x;       // (nx,ny,nz,ci)
  std::vector<double> h_prev;  // (ox,oy,oz,co)
  std::vector<double> c_prev;  // (ox,oy,oz,co)
  std::vector<double> wfx, wfh, wix, wih, wox, woh, wcx, wch;  // kernels
  std::vector<double> bf, bi, bo, bc;                          // (co)
  Dims3 n;
  long ci;
  Dims3 k;
  long co;
  Dims3 stride;
};

struct ConvLstmOracleOut {
  std::vector<double> h, c, f, i, o, ctil;
};

inline ConvLstmOracleOut convlstm_step(const ConvLstmOracleIn& a) {
  const Dims3 od{(a.n.x + a.stride.x - 1) / a.stride.x,
                 (a.n.y + a.stride.y - 1) / a.stride.y,
                 (a.n.z + a.stride.z - 1) / a.stride.z};
  const std::size_t m = static_cast<std::size_t>(od.x * od.y * od.z * a.co);
  auto gate_pre = [&](const std::vector<double>& wx,
                      const std::vector<double>& wh,
                      const std::vector<double>& b) {
    std::vector<double> px = conv3d(a.x, a.n, a.ci, wx, a.k, a.co, a.stride);
    std::vector<double> ph =
        conv3d(a.h_prev, od, a.co, wh, a.k, a.co, Dims3{1, 1, 1});
    for (std::size_t j = 0; j < m; ++j)
      px[j] += ph[j] + b[static_cast<std::size_t>(j % a.co)];
    return px;
  };
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  ConvLstmOracleOut r;
  r.f = gate_pre(a.wfx, a.wfh, a.bf);
  r.i = gate_pre(a.wix, a.wih, a.bi);
  r.o = gate_pre(a.wox, a.woh, a.bo);
  r.ctil = gate_pre(a.wcx, a.wch, a.bc);
  r.c.resize(m);
  r.h.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    r.f[j] = sig(r.f[j]);
    r.i[j] = sig(r.i[j]);
    r.o[j] = sig(r.o[j]);
    r.ctil[j] = std::tanh(r.ctil[j]);
    r.c[j] = r.f[j] * a.c_prev[j] + r.i[j] * r.ctil[j];
    r.h[j] = r.o[j] * std::tanh(r.c[j]);
  }
  return r;
}

}  // namespace oracle

#endif
