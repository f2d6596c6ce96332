#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qcaembed {

using Rng = std::mt19937_64;

/// Seeds for independent sub-streams are derived from a root seed and a
/// stream name (plus optional indices) with FNV-1a followed by splitmix64
/// finalisation. The derivation is stable across builds and platforms:
///
///   s = splitmix64(root ^ fnv1a(name))
///   s = splitmix64(s ^ index_k)   for each index
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view text);
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream);
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream, std::uint64_t index,
                          std::uint64_t sub_index);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform integer in [0, n). Rejection sampling on the raw engine output so the
// draw sequence does not depend on the standard library's distribution code.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);
// Uniform double in [0, 1) built from the top 53 bits.
double uniform_unit(Rng& rng);
double standard_normal(Rng& rng);

template <class It>
void shuffle_range(It first, It last, Rng& rng) {
  auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    auto j = uniform_index(rng, i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

} // namespace qcaembed
