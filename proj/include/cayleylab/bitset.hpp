#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cayleylab {

/// Runtime-sized bit vector over 64-bit words. Bits past size() are kept zero.
class DynamicBitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const Word* data() const noexcept { return words_.data(); }
  Word* data() noexcept { return words_.data(); }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= Word{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(Word{1} << (i & 63)); }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

  void set_all() noexcept {
    std::fill(words_.begin(), words_.end(), ~Word{0});
    trim();
  }

  std::size_t count() const noexcept {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  bool any() const noexcept {
    for (Word w : words_)
      if (w) return true;
    return false;
  }

  bool all() const noexcept { return count() == size_; }

  /// True iff the two sets share an element. Stops at the first shared word.
  bool intersects(const DynamicBitset& other) const noexcept {
    const std::size_t n = words_.size();
    for (std::size_t w = 0; w < n; ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }

  DynamicBitset& operator|=(const DynamicBitset& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }

  DynamicBitset& operator&=(const DynamicBitset& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }

  bool operator==(const DynamicBitset& other) const = default;

  /// Calls f(index) for every set bit in ascending order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(w * kWordBits + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  void trim() noexcept {
    if (size_ % kWordBits && !words_.empty())
      words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace cayleylab
