// AVX2 kernel variants. This translation unit is compiled with -mavx2 and its
// entry points are called only after a runtime cpuid check.

#include "ydgrow/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace ydgrow::kernels {
namespace {

// Lane i tests bit i of a broadcast 16-bit group.
const __m256i kLaneBits = _mm256_setr_epi16(
    0x0001, 0x0002, 0x0004, 0x0008, 0x0010, 0x0020, 0x0040, 0x0080,
    0x0100, 0x0200, 0x0400, 0x0800, 0x1000, 0x2000, 0x4000, static_cast<short>(0x8000));

inline __m256i bit_group_mask(uint16_t group) {
  __m256i g = _mm256_set1_epi16(static_cast<short>(group));
  __m256i sel = _mm256_and_si256(g, kLaneBits);
  return _mm256_cmpeq_epi16(sel, kLaneBits);  // 0xFFFF where the bit is set
}

void bits_add_u16_avx2(uint16_t* acc, const uint64_t* bits, size_t n) {
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint16_t group = static_cast<uint16_t>(bits[i >> 6] >> (i & 63));
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    a = _mm256_sub_epi16(a, bit_group_mask(group));  // -(-1) == +1 where set
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), a);
  }
  for (; i < n; ++i) acc[i] += static_cast<uint16_t>((bits[i >> 6] >> (i & 63)) & 1u);
}

void bits_sub_u16_avx2(uint16_t* acc, const uint64_t* bits, size_t n) {
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint16_t group = static_cast<uint16_t>(bits[i >> 6] >> (i & 63));
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    a = _mm256_add_epi16(a, bit_group_mask(group));  // +(-1) == -1 where set
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), a);
  }
  for (; i < n; ++i) acc[i] -= static_cast<uint16_t>((bits[i >> 6] >> (i & 63)) & 1u);
}

void range_add_u16_avx2(uint16_t* p, size_t n, uint16_t delta) {
  __m256i d = _mm256_set1_epi16(static_cast<short>(delta));
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p + i), _mm256_add_epi16(a, d));
  }
  for (; i < n; ++i) p[i] += delta;
}

void classify_u16_avx2(const uint16_t* h, const uint16_t* v, const uint64_t* occ, size_t n,
                       const uint16_t* cap, size_t cap_len, uint64_t* out) {
  size_t words = (n + 63) / 64;
  for (size_t w = 0; w < words; ++w) out[w] = 0;

  constexpr size_t kMaxCap = 512;
  if (cap_len > kMaxCap) {
    for (size_t i = 0; i < n; ++i) {
      bool occupied = (occ[i >> 6] >> (i & 63)) & 1u;
      if (!occupied && h[i] >= cap[v[i]]) out[i >> 6] |= 1ull << (i & 63);
    }
    return;
  }
  alignas(32) int32_t cap32[kMaxCap];
  for (size_t c = 0; c < cap_len; ++c) cap32[c] = cap[c];

  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i h32 = _mm256_cvtepu16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(h + i)));
    __m256i v32 = _mm256_cvtepu16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(v + i)));
    __m256i c32 = _mm256_i32gather_epi32(cap32, v32, 4);
    __m256i below = _mm256_cmpgt_epi32(c32, h32);  // cap > h, i.e. not firing
    uint32_t not_fire = static_cast<uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(below)));
    uint32_t fire = ~not_fire & 0xFFu;
    uint32_t occ8 = static_cast<uint32_t>(occ[i >> 6] >> (i & 63)) & 0xFFu;
    out[i >> 6] |= static_cast<uint64_t>(fire & ~occ8) << (i & 63);
  }
  for (; i < n; ++i) {
    bool occupied = (occ[i >> 6] >> (i & 63)) & 1u;
    if (!occupied && h[i] >= cap[v[i]]) out[i >> 6] |= 1ull << (i & 63);
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{bits_add_u16_avx2, bits_sub_u16_avx2, range_add_u16_avx2,
                       classify_u16_avx2, "avx2"};
  return ops;
}

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

}  // namespace ydgrow::kernels

#else

namespace ydgrow::kernels {
const Ops& avx2_ops() { return scalar_ops(); }
bool avx2_available() { return false; }
}  // namespace ydgrow::kernels

#endif
