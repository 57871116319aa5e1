#include <atomic>
#include <cstdlib>
#include <string>

#include "normdeg/simd/bitops.hpp"

namespace normdeg::simd {

#if defined(NORMDEG_HAVE_AVX2)
const BitKernels& avx2_kernels_impl();
#endif
#if defined(NORMDEG_HAVE_NEON)
const BitKernels& neon_kernels_impl();
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const BitKernels* avx2_kernels() {
#if defined(NORMDEG_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported ? &avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const BitKernels* neon_kernels() {
#if defined(NORMDEG_HAVE_NEON)
  return &neon_kernels_impl();
#else
  return nullptr;
#endif
}

namespace {

const BitKernels* lookup(Isa isa) {
  switch (isa) {
    case Isa::scalar: return &scalar_kernels();
    case Isa::avx2: return avx2_kernels();
    case Isa::neon: return neon_kernels();
  }
  return nullptr;
}

const BitKernels* select_initial() {
  if (const char* env = std::getenv("NORMDEG_ISA")) {
    std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(isa)) {
        if (const BitKernels* k = lookup(isa)) return k;
      }
    }
  }
  if (const BitKernels* k = avx2_kernels()) return k;
  if (const BitKernels* k = neon_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const BitKernels*>& active_slot() {
  static std::atomic<const BitKernels*> slot{select_initial()};
  return slot;
}

}  // namespace

const BitKernels& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

bool force_isa(Isa isa) {
  const BitKernels* k = lookup(isa);
  if (k == nullptr) return false;
  active_slot().store(k, std::memory_order_release);
  return true;
}

}  // namespace normdeg::simd
