#pragma once

#include <cstdint>
#include <vector>

namespace cpa {

// SplitMix64 generator (public-domain reference constants). Chosen over
// std::mt19937_64 + std::uniform_int_distribution because the standard
// distributions are implementation-defined: the same seed must produce the
// same stream on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, n) by rejection sampling; no modulo bias.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // In-place Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Child seed for worker `index` of a partitioned computation. Derived from
// the master stream so results are independent of thread count/scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master);
  std::uint64_t s = 0;
  for (std::uint64_t i = 0; i <= index; ++i) s = g.next();
  return s;
}

}  // namespace cpa
