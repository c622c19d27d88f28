#pragma once

#include <cstdint>
#include <string_view>

namespace pfake {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Combines two 64-bit values into a well-mixed key.
std::uint64_t combine_keys(std::uint64_t a, std::uint64_t b) noexcept;

/// FNV-1a over the bytes of `text`; stable across platforms and runs.
std::uint64_t stable_hash(std::string_view text) noexcept;

/// Counter-based random stream: the n-th draw is mix64(key, n), so a stream
/// is fully described by (key, counter) and forks never share state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) noexcept : key_(mix64(key ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept;
  /// Uniform integer on [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }
  /// Standard normal via Box-Muller; consumes two draws.
  double normal() noexcept;
  double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

  /// Independent child stream identified by `tag`.
  RandomStream fork(std::uint64_t tag) const noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  struct RawKey {};
  RandomStream(RawKey, std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pfake
