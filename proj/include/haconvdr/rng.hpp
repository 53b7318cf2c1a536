#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace haconvdr {

// FNV-1a 64-bit hash. Used for term hashing in the featurizer, for deriving
// named RNG streams, and for content hashes in pipeline manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a64_u64(std::uint64_t h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

// SplitMix64: the documented seeded generator used everywhere randomness is
// required. Fully specified by the seed, with no platform-dependent state,
// so every derived artifact is bit-reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0,1): top 53 bits scaled by 2^-53.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0,n). Plain modulo; the bias is negligible at the
  // scales used here and the mapping is trivial to re-implement elsewhere.
  std::uint64_t uniform_int(std::uint64_t n) { return next() % n; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    // Fisher-Yates, descending.
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream from a base seed plus a label and integer
// keys: the stream seed is the FNV-1a 64 hash of the little-endian base seed,
// the label bytes, and each key in order.
inline SplitMix64 derive_stream(std::uint64_t seed, std::string_view label,
                                std::uint64_t k0 = 0, std::uint64_t k1 = 0) {
  std::uint64_t h = 14695981039346656037ull;
  h = fnv1a64_u64(h, seed);
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h = fnv1a64_u64(h, k0);
  h = fnv1a64_u64(h, k1);
  return SplitMix64(h);
}

}  // namespace haconvdr
