#include <doctest.h>

#include "dsi/rng.hpp"
#include "dsi/tensor.hpp"

using dsi::Rng;
using dsi::Tensor;

TEST_CASE("shape bookkeeping") {
  Tensor t = Tensor::zeros({2, 3, 4});
  CHECK(t.size() == 24);
  CHECK(t.rank() == 3);
  t.at({1, 2, 3}) = 7.0;
  CHECK(t.values[23] == 7.0);
  CHECK_THROWS_AS(Tensor({2, 2}, {1.0, 2.0, 3.0}), dsi::DimensionError);
  CHECK_THROWS_AS(Tensor::zeros({0, 3}), dsi::DimensionError);
}

TEST_CASE("finite check") {
  Tensor t = Tensor::full({4}, 1.5);
  CHECK(t.all_finite());
  t[2] = std::nan("");
  CHECK_FALSE(t.all_finite());
}

TEST_CASE("random fills are deterministic per seed") {
  Rng a(42), b(42), c(43);
  Tensor ta = Tensor::normal({100}, a);
  Tensor tb = Tensor::normal({100}, b);
  Tensor tc = Tensor::normal({100}, c);
  CHECK(ta.values == tb.values);
  CHECK(ta.values != tc.values);
}

TEST_CASE("uniform bounds") {
  Rng r(7);
  Tensor t = Tensor::uniform({1000}, r, -0.25, 0.25);
  for (double v : t.values) {
    CHECK(v >= -0.25);
    CHECK(v < 0.25);
  }
}
