#include "ydgrow/kernels.hpp"

namespace ydgrow::kernels {
namespace {

void bits_add_u16_scalar(uint16_t* acc, const uint64_t* bits, size_t n) {
  for (size_t i = 0; i < n; ++i) acc[i] += static_cast<uint16_t>((bits[i >> 6] >> (i & 63)) & 1u);
}

void bits_sub_u16_scalar(uint16_t* acc, const uint64_t* bits, size_t n) {
  for (size_t i = 0; i < n; ++i) acc[i] -= static_cast<uint16_t>((bits[i >> 6] >> (i & 63)) & 1u);
}

void range_add_u16_scalar(uint16_t* p, size_t n, uint16_t delta) {
  for (size_t i = 0; i < n; ++i) p[i] += delta;
}

void classify_u16_scalar(const uint16_t* h, const uint16_t* v, const uint64_t* occ, size_t n,
                         const uint16_t* cap, size_t /*cap_len*/, uint64_t* out) {
  size_t words = (n + 63) / 64;
  for (size_t w = 0; w < words; ++w) out[w] = 0;
  for (size_t i = 0; i < n; ++i) {
    bool occupied = (occ[i >> 6] >> (i & 63)) & 1u;
    if (!occupied && h[i] >= cap[v[i]]) out[i >> 6] |= 1ull << (i & 63);
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{bits_add_u16_scalar, bits_sub_u16_scalar, range_add_u16_scalar,
                       classify_u16_scalar, "scalar"};
  return ops;
}

}  // namespace ydgrow::kernels
