#pragma once

// Word-array kernels behind ElementSet. Every ISA variant must agree bit for
// bit with the scalar reference; tests/test_bitops.cpp checks that.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace normdeg::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct BitKernels {
  Isa isa;
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t words);
  std::size_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  /// a is a subset of b
  bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  bool (*equal)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  /// Index of the lowest bit where a and b differ, or -1 when equal.
  std::ptrdiff_t (*first_difference)(const std::uint64_t* a, const std::uint64_t* b,
                                     std::size_t words);
};

const BitKernels& scalar_kernels();

/// Null when the variant was not compiled in or the CPU lacks it.
const BitKernels* avx2_kernels();
const BitKernels* neon_kernels();

/// Best available variant. NORMDEG_ISA=scalar|avx2|neon in the environment
/// overrides the choice at first use.
const BitKernels& active_kernels();

/// Pins the active variant (tests and benchmarks). Returns false if the
/// requested ISA is unavailable, leaving the selection unchanged.
bool force_isa(Isa isa);

}  // namespace normdeg::simd
