#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "normdeg/simd/bitops.hpp"

namespace normdeg {

using Element = std::uint32_t;

/// Fixed-universe bitset over element ids 0..universe-1. Bits past the
/// universe are always zero, so word-level kernels need no masking.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return universe_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const std::uint64_t* data() const noexcept { return words_.data(); }

  bool test(Element e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void set(Element e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void reset(Element e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  void fill() {
    for (std::size_t e = 0; e < universe_; ++e) set(static_cast<Element>(e));
  }

  std::size_t count() const {
    return simd::active_kernels().popcount(words_.data(), words_.size());
  }
  std::size_t intersection_count(const ElementSet& other) const {
    return simd::active_kernels().and_popcount(words_.data(), other.words_.data(), words_.size());
  }
  bool is_subset_of(const ElementSet& other) const {
    return simd::active_kernels().is_subset(words_.data(), other.words_.data(), words_.size());
  }

  ElementSet& operator&=(const ElementSet& other) {
    simd::active_kernels().and_into(words_.data(), other.words_.data(), words_.size());
    return *this;
  }
  ElementSet& operator|=(const ElementSet& other) {
    simd::active_kernels().or_into(words_.data(), other.words_.data(), words_.size());
    return *this;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.universe_ == b.universe_ &&
           simd::active_kernels().equal(a.words_.data(), b.words_.data(), a.words_.size());
  }

  /// Lexicographic order of the ascending element lists of two equal-size
  /// sets: the set holding the lowest differing element sorts first.
  bool lex_less(const ElementSet& other) const {
    auto pos = simd::active_kernels().first_difference(words_.data(), other.words_.data(),
                                                       words_.size());
    return pos >= 0 && test(static_cast<Element>(pos));
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        int b = __builtin_ctzll(bits);
        fn(static_cast<Element>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull ^ universe_;
    for (std::uint64_t w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace normdeg
