#include "afdforge/rng.hpp"

#include <algorithm>
#include <numeric>

namespace afdforge::util {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n < 2) return 0;
  std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return derive_seed(base, h);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  Rng mix(base ^ (salt + 0x9e3779b97f4a7c15ULL));
  return mix.next();
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (k > n) k = n;
  // Partial Fisher-Yates: first k slots end up with the sample.
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace afdforge::util
