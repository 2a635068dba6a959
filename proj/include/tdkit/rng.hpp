#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace tdkit {

// std::mt19937_64 is specified bit-exactly by the standard; the
// distributions are not, so everything seeded goes through these helpers.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  // 2^64 mod bound; values below it would bias the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % bound;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// Uniform sample of min(k, v.size()) elements without replacement, by a
// partial forward Fisher-Yates: for i in [0, k) swap v[i] with v[i + U(n - i)].
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> v, std::size_t k, Rng& rng) {
  const std::size_t n = v.size();
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, n - i));
    std::swap(v[i], v[j]);
  }
  v.resize(k);
  return v;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace tdkit
