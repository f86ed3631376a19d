#pragma once

/**
 * Counter-based random streams.
 *
 * RngStream wraps Philox4x32-10: the 64-bit master seed is the key and the
 * 128-bit counter is split into a 64-bit stream id and a 64-bit block index.
 * Any (seed, stream) pair therefore names an independent, reproducible
 * sequence, and trial streams can be derived without shared state.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace cayleylab {

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// The raw Philox4x32 bijection with 10 rounds.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter apply(Counter ctr, Key key) noexcept {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

/// Seedable, splittable stream of 64-bit values. Satisfies
/// UniformRandomBitGenerator so it can also feed <random> distributions,
/// though the helpers below are preferred because their output is identical
/// across standard library implementations.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream) {}

  /// Stream for trial `trial` of experiment row `row`.
  static RngStream for_trial(std::uint64_t seed, std::uint32_t row,
                             std::uint32_t trial) noexcept {
    return RngStream(seed, (static_cast<std::uint64_t>(row) << 32) | trial);
  }

  /// Child stream; children of distinct ids never coincide with each other.
  RngStream split(std::uint64_t child) const noexcept {
    return RngStream(seed_, detail::splitmix64(stream_ ^ detail::splitmix64(child + 1)));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (buffered_ == 0) refill();
    --buffered_;
    return buffer_[buffered_];
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t r;
    do {
      r = (*this)();
    } while (r >= limit);
    return r % bound;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill() noexcept {
    const Philox4x32::Counter ctr = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    const Philox4x32::Key key = {static_cast<std::uint32_t>(seed_),
                                 static_cast<std::uint32_t>(seed_ >> 32)};
    const auto out = Philox4x32::apply(ctr, key);
    ++block_;
    // Served back to front by operator().
    buffer_[1] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buffer_[0] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    buffered_ = 2;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// Bernoulli(p) test against raw 64-bit draws. Inclusion is `draw < cutoff`,
/// so for a fixed draw the outcome is monotone in p.
class BernoulliCutoff {
 public:
  explicit BernoulliCutoff(double p) noexcept {
    if (!(p > 0.0)) {
      always_ = false;
      cutoff_ = 0;
    } else if (p >= 1.0) {
      always_ = true;
    } else {
      const long double scaled = std::ldexp(static_cast<long double>(p), 64);
      cutoff_ = scaled >= 0x1.0p64L ? std::numeric_limits<std::uint64_t>::max()
                                    : static_cast<std::uint64_t>(scaled);
    }
  }

  bool operator()(std::uint64_t draw) const noexcept { return always_ || draw < cutoff_; }

 private:
  bool always_ = false;
  std::uint64_t cutoff_ = 0;
};

}  // namespace cayleylab
