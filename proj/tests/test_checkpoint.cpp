#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "dsi/checkpoint.hpp"
#include "dsi/rng.hpp"

using dsi::NamedArrays;
using dsi::Rng;
using dsi::Tensor;

TEST_CASE("checkpoint round-trips names, shapes and values bit-exactly") {
  Rng rng(5);
  NamedArrays a;
  a.set("enc.w0", Tensor::normal({3, 3, 3, 2, 4}, rng));
  a.set("enc.b0", Tensor::normal({4}, rng));
  a.set("norm.pmin", Tensor::from({1}, {15.2}));
  const std::string path = "ckpt_test.dsiw";
  dsi::write_checkpoint(path, a);
  NamedArrays b = dsi::read_checkpoint(path);
  REQUIRE(b.items.size() == 3);
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    CHECK(b.items[i].first == a.items[i].first);
    CHECK(b.items[i].second.shape == a.items[i].second.shape);
    CHECK(b.items[i].second.values == a.items[i].second.values);
  }
  CHECK(b.get("enc.b0").size() == 4);
  CHECK(b.find("missing") == nullptr);
  CHECK_THROWS(b.get("missing"));
  std::remove(path.c_str());
}

TEST_CASE("checkpoint write is byte-stable") {
  Rng rng(6);
  NamedArrays a;
  a.set("x", Tensor::normal({17}, rng));
  dsi::write_checkpoint("ckpt_a.dsiw", a);
  dsi::write_checkpoint("ckpt_b.dsiw", a);
  std::ifstream f1("ckpt_a.dsiw", std::ios::binary);
  std::ifstream f2("ckpt_b.dsiw", std::ios::binary);
  std::string s1((std::istreambuf_iterator<char>(f1)),
                 std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)),
                 std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  CHECK(s1.substr(0, 4) == "DSIW");
  std::remove("ckpt_a.dsiw");
  std::remove("ckpt_b.dsiw");
}

TEST_CASE("magic is validated") {
  {
    std::ofstream os("not_a_ckpt.bin", std::ios::binary);
    os << "JUNKJUNKJUNK";
  }
  CHECK_THROWS(dsi::read_checkpoint("not_a_ckpt.bin"));
  std::remove("not_a_ckpt.bin");
}
