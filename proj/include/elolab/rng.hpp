#ifndef ELOLAB_RNG_HPP
#define ELOLAB_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace elolab {

// SplitMix64 finalizer (Steele/Lea/Flood constants). Stateless scramble of a
// 64-bit word; also the per-step output function of the generator below.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// SplitMix64 generator. All randomness in elolab flows through this type so
// that runs are bit-reproducible across platforms and standard-library
// versions; std::mt19937 + std::uniform_*_distribution would not be.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), unbiased (Lemire's multiply-shift with
  // rejection). bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

// Stable child-seed derivation: hash of (master seed, purpose tag, index).
// Parallel consumers draw from independent streams keyed by (tag, index)
// regardless of scheduling order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view tag,
                          std::uint64_t index);

// In-place Fisher-Yates shuffle driven by the given generator.
template <typename T>
void fisher_yates_shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// Identity permutation [0, n).
std::vector<std::size_t> identity_permutation(std::size_t n);

}  // namespace elolab

#endif  // ELOLAB_RNG_HPP
