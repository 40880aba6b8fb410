#pragma once

// Data-parallel inner loops of the growth engine: expanding bit rows into
// per-cell u16 counts, contiguous range adds, and threshold classification.
// Scalar reference implementations plus an AVX2 variant chosen at runtime;
// every backend must be bit-identical to scalar (equivalence-tested).

#include <cstddef>
#include <cstdint>

namespace ydgrow::kernels {

struct Ops {
  // acc[i] += bit i of `bits` (i < n).
  void (*bits_add_u16)(uint16_t* acc, const uint64_t* bits, size_t n);
  // acc[i] -= bit i of `bits`; callers guarantee acc[i] >= bit.
  void (*bits_sub_u16)(uint16_t* acc, const uint64_t* bits, size_t n);
  // p[i] += delta.
  void (*range_add_u16)(uint16_t* p, size_t n, uint16_t delta);
  // out bit i = (occ bit i clear) && h[i] >= cap[v[i]], with v[i] < cap_len.
  // `out` holds ceil(n/64) words; trailing bits of the last word are zeroed.
  void (*classify_u16)(const uint16_t* h, const uint16_t* v, const uint64_t* occ, size_t n,
                       const uint16_t* cap, size_t cap_len, uint64_t* out);
  const char* name;
};

const Ops& scalar_ops();
bool avx2_available();
const Ops& avx2_ops();  // only meaningful when avx2_available()

// Autodetected backend; YDGROW_KERNELS=scalar|avx2 overrides.
const Ops& active_ops();

// Test hook: force a backend by name ("scalar"/"avx2"); nullptr restores autodetection.
void force_backend(const char* name);

}  // namespace ydgrow::kernels
