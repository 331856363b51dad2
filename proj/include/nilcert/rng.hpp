#ifndef NILCERT_RNG_HPP
#define NILCERT_RNG_HPP

#include <cstdint>

namespace nilcert {

/// SplitMix64. Used instead of <random> engines so that seeded output is
/// byte-identical across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n); n > 0. Slight modulo bias is irrelevant for
  /// test-instance generation and keeps the stream position deterministic.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

}  // namespace nilcert

#endif
