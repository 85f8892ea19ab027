#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stabgap/errors.hpp"

namespace stabgap {

/// Fixed-length bit vector over GF(2).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) noexcept {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }

  std::size_t popcount() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Parity of popcount(a & b).
  static bool dot(const BitVec& a, const BitVec& b) {
    check_same(a, b);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1;
  }
  /// popcount(a & b).
  static std::size_t overlap(const BitVec& a, const BitVec& b) {
    check_same(a, b);
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    return c;
  }

  BitVec& operator^=(const BitVec& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

  friend bool operator==(const BitVec& a, const BitVec& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator<(const BitVec& a, const BitVec& b) noexcept {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return a.words_ < b.words_;
  }

  /// Lowest set bit index, or size() when empty.
  std::size_t first_set() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
  }

  /// The low 64 bits, for compact indexing when size() <= 64.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }
  static BitVec from_word(std::size_t n, std::uint64_t w) {
    BitVec b(n);
    if (!b.words_.empty()) b.words_[0] = n >= 64 ? w : (w & ((std::uint64_t{1} << n) - 1));
    return b;
  }

  /// Bit i printed at position i, '0'/'1'.
  std::string str() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  std::size_t hash() const noexcept {
    std::size_t h = size_;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  static void check_same(const BitVec& a, const BitVec& b) {
    if (a.size_ != b.size_)
      throw DimensionError("bit vector length mismatch: " + std::to_string(a.size_) + " vs " +
                           std::to_string(b.size_));
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& b) const noexcept { return b.hash(); }
};

}  // namespace stabgap
