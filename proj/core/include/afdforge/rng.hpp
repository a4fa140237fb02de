#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace afdforge::util {

// Deterministic splitmix64 generator. Self-contained so that sampled output
// is identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n > 0. Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Stable seed derivation for pipeline stages: same (base, label) pair always
// yields the same stage seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

// k distinct indices drawn from [0, n), in ascending order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng);

}  // namespace afdforge::util
