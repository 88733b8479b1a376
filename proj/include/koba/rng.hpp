#pragma once

// Counter-based random streams: the n-th draw of a stream is a pure function
// of (key, n), so parallel batches are reproducible in any schedule.

#include <cstdint>

namespace koba {

[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a stream key from a seed and up to three stream coordinates.
[[nodiscard]] constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a = 0,
                                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
  k = mix64(k ^ (a + 0x632be59bd9b4e019ULL));
  k = mix64(k ^ (b + 0x85157af5b5a3e1c7ULL));
  return mix64(k ^ (c + 0xd6e8feb86659fd93ULL));
}

class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  constexpr std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in (0,1); never returns 0 or 1.
  constexpr double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  [[nodiscard]] constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace koba
