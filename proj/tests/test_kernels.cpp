#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "ydgrow/kernels.hpp"
#include "ydgrow/rng.hpp"

using namespace ydgrow;

TEST_CASE("scalar kernels on hand inputs") {
  const kernels::Ops& ops = kernels::scalar_ops();

  std::vector<uint16_t> acc = {1, 2, 3, 4};
  uint64_t bits = 0b1010;
  ops.bits_add_u16(acc.data(), &bits, 4);
  CHECK(acc == std::vector<uint16_t>{1, 3, 3, 5});
  ops.bits_sub_u16(acc.data(), &bits, 4);
  CHECK(acc == std::vector<uint16_t>{1, 2, 3, 4});

  ops.range_add_u16(acc.data(), 3, 2);
  CHECK(acc == std::vector<uint16_t>{3, 4, 5, 4});
  ops.range_add_u16(acc.data(), 3, uint16_t(-2));
  CHECK(acc == std::vector<uint16_t>{1, 2, 3, 4});

  // cap[v] = horizontal count a site at vertical count v needs to fire;
  // 0xFFFF marks rows that never fire on the horizontal count alone.
  std::vector<uint16_t> h = {0, 2, 2, 9};
  std::vector<uint16_t> v = {0, 0, 1, 2};
  std::vector<uint16_t> cap = {2, 3, 0xFFFF};
  uint64_t occ = 0b0010;  // site 1 already occupied
  uint64_t out = ~0ull;
  ops.classify_u16(h.data(), v.data(), &occ, 4, cap.data(), cap.size(), &out);
  // site 0: h=0 < cap[0]=2, no. site 1: occupied, no. site 2: 2 < cap[1]=3,
  // no. site 3: cap[2] is the never sentinel, no.
  CHECK(out == 0);
  h = {2, 2, 3, 9};
  ops.classify_u16(h.data(), v.data(), &occ, 4, cap.data(), cap.size(), &out);
  CHECK(out == 0b0101);  // sites 0 and 2 reach their caps
}

TEST_CASE("classify zeroes trailing bits") {
  const kernels::Ops& ops = kernels::scalar_ops();
  size_t n = 70;
  std::vector<uint16_t> h(n, 5), v(n, 0);
  std::vector<uint16_t> cap = {1};
  std::vector<uint64_t> occ(2, 0);
  std::vector<uint64_t> out(2, ~0ull);
  ops.classify_u16(h.data(), v.data(), occ.data(), n, cap.data(), 1, out.data());
  CHECK(out[0] == ~0ull);
  CHECK(out[1] == (~0ull >> (64 - 6)));
}

TEST_CASE("backend dispatch") {
  const kernels::Ops& active = kernels::active_ops();
  CHECK(active.name != nullptr);
  if (kernels::avx2_available()) {
    kernels::force_backend("scalar");
    CHECK(std::string(kernels::active_ops().name) == "scalar");
    kernels::force_backend("avx2");
    CHECK(std::string(kernels::active_ops().name) == "avx2");
    kernels::force_backend(nullptr);
  } else {
    CHECK(std::string(active.name) == "scalar");
  }
}

TEST_CASE("vector backend matches scalar") {
  if (!kernels::avx2_available()) return;
  const kernels::Ops& sc = kernels::scalar_ops();
  const kernels::Ops& vx = kernels::avx2_ops();
  SplitMix64 rng(2024);
  for (size_t n : {1ul, 7ul, 63ul, 64ul, 65ul, 127ul, 200ul, 1000ul}) {
    size_t words = (n + 63) / 64;
    std::vector<uint64_t> bits(words);
    for (auto& w : bits) w = rng.next();
    if (n % 64) bits.back() &= ~0ull >> (64 - n % 64);
    std::vector<uint16_t> base(n);
    for (auto& x : base) x = uint16_t(rng.next() % 900);

    std::vector<uint16_t> a = base, b = base;
    sc.bits_add_u16(a.data(), bits.data(), n);
    vx.bits_add_u16(b.data(), bits.data(), n);
    CHECK(a == b);
    sc.bits_sub_u16(a.data(), bits.data(), n);
    vx.bits_sub_u16(b.data(), bits.data(), n);
    CHECK(a == b);

    for (size_t cap_len : {3ul, 700ul}) {  // 700 exceeds the gather table limit
      std::vector<uint16_t> cap(cap_len);
      for (auto& x : cap) x = uint16_t(rng.next() % 4);
      cap.back() = 0xFFFF;
      std::vector<uint16_t> h(n), v(n);
      for (auto& x : h) x = uint16_t(rng.next() % 5);
      for (auto& x : v) x = uint16_t(rng.next() % cap_len);
      std::vector<uint64_t> occ(words);
      for (auto& w : occ) w = rng.next();
      if (n % 64) occ.back() &= ~0ull >> (64 - n % 64);
      std::vector<uint64_t> oa(words), ob(words);
      sc.classify_u16(h.data(), v.data(), occ.data(), n, cap.data(), cap_len, oa.data());
      vx.classify_u16(h.data(), v.data(), occ.data(), n, cap.data(), cap_len, ob.data());
      CHECK(oa == ob);
    }
  }
}
