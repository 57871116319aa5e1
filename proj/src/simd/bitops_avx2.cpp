// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "normdeg/simd/bitops.hpp"

namespace normdeg::simd {

namespace {

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Nibble-LUT popcount; returns four 64-bit partial counts.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::size_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

std::size_t popcount(const std::uint64_t* a, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) acc = _mm256_add_epi64(acc, popcount_epi64(load(a + i)));
  std::size_t n = horizontal_sum(acc);
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(load(a + i), load(b + i))));
  }
  std::size_t n = horizontal_sum(acc);
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    // testc(b, a): (~b & a) == 0
    if (!_mm256_testc_si256(load(b + i), load(a + i))) return false;
  }
  for (; i < words; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; i < words; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

void and_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
  for (; i < words; ++i) dst[i] &= src[i];
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

std::ptrdiff_t first_difference(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
    if (_mm256_testz_si256(x, x)) continue;
    // mask of 64-bit lanes that are nonzero
    __m256i nz = _mm256_cmpeq_epi64(x, _mm256_setzero_si256());
    unsigned lanes = ~static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(nz))) & 0xfu;
    std::size_t lane = static_cast<std::size_t>(std::countr_zero(lanes));
    std::uint64_t w = a[i + lane] ^ b[i + lane];
    return static_cast<std::ptrdiff_t>((i + lane) * 64 + std::countr_zero(w));
  }
  for (; i < words; ++i) {
    std::uint64_t x = a[i] ^ b[i];
    if (x != 0) return static_cast<std::ptrdiff_t>(i * 64 + std::countr_zero(x));
  }
  return -1;
}

}  // namespace

const BitKernels& avx2_kernels_impl() {
  static const BitKernels k{Isa::avx2, popcount,  and_popcount,    is_subset,
                            equal,     and_into, or_into, first_difference};
  return k;
}

}  // namespace normdeg::simd
