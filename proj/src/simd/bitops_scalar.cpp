#include <bit>

#include "normdeg/simd/bitops.hpp"

namespace normdeg::simd {

namespace {

std::size_t popcount(const std::uint64_t* a, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) {
    n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  }
  return n;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

void and_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= src[i];
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
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

const BitKernels& scalar_kernels() {
  static const BitKernels k{Isa::scalar, popcount,  and_popcount,    is_subset,
                            equal,       and_into, or_into, first_difference};
  return k;
}

}  // namespace normdeg::simd
