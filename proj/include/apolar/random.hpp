#ifndef APOLAR_RANDOM_HPP
#define APOLAR_RANDOM_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace apolar {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

/// Stream seed for one construction step: splitmix64(seed ^ fnv1a64(tag)).
/// Distinct tags give independent streams from the same user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : tag) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(seed ^ h);
}

/// Seeded generator. Integer sampling is done by rejection on the raw
/// mt19937_64 output so results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("empty sampling range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// Uniform in [-bound, bound] \ {0}.
  std::int64_t nonzero(std::int64_t bound) {
    const std::int64_t x = uniform(1, 2 * bound);
    return x <= bound ? x - bound - 1 : x - bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace apolar

#endif  // APOLAR_RANDOM_HPP
