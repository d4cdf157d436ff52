#include "elolab/rng.hpp"

#include <numeric>

namespace elolab {

namespace {

// FNV-1a over the tag bytes.
std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view tag,
                          std::uint64_t index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ hash_tag(tag));
  return mix64(h ^ index);
}

std::vector<std::size_t> identity_permutation(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

}  // namespace elolab
