// Built only on aarch64, where NEON is part of the baseline ISA.

#include <arm_neon.h>

#include <bit>

#include "normdeg/simd/bitops.hpp"

namespace normdeg::simd {

namespace {

inline std::size_t popcount_u64x2(uint64x2_t v) {
  return static_cast<std::size_t>(vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v))));
}

std::size_t popcount(const std::uint64_t* a, std::size_t words) {
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) n += popcount_u64x2(vld1q_u64(a + i));
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) n += popcount_u64x2(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    uint64x2_t extra = vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vmaxvq_u32(vreinterpretq_u32_u64(extra)) != 0) return false;
  }
  for (; i < words; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    uint64x2_t x = veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vmaxvq_u32(vreinterpretq_u32_u64(x)) != 0) return false;
  }
  for (; i < words; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

void and_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) vst1q_u64(dst + i, vandq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] &= src[i];
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

std::ptrdiff_t first_difference(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    std::uint64_t x = a[i] ^ b[i];
    if (x != 0) return static_cast<std::ptrdiff_t>(i * 64 + std::countr_zero(x));
  }
  return -1;
}

}  // namespace

const BitKernels& neon_kernels_impl() {
  static const BitKernels k{Isa::neon, popcount,  and_popcount,    is_subset,
                            equal,     and_into, or_into, first_difference};
  return k;
}

}  // namespace normdeg::simd
