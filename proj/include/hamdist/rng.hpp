#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hamdist {

using Rng = std::mt19937_64;

// splitmix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream derivation: stream i of a given seed does not depend
// on how many other streams exist or in which order they are consumed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream * 0xd1342543de82ef95ULL + 1));
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

// Draws one word from `parent` and derives `count` independent child streams
// from it. Used before fanning work out to OpenMP threads.
inline std::vector<Rng> split_streams(Rng& parent, std::size_t count) {
  const std::uint64_t base = parent();
  std::vector<Rng> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(make_stream(base, i));
  return out;
}

// Indices of a Bernoulli(1/inverse_rate) subset of [n], in increasing order.
// Gaps are drawn geometrically so the cost is proportional to the output.
inline void sample_subset(std::size_t n, std::uint64_t inverse_rate, Rng& rng,
                          std::vector<std::uint32_t>& out) {
  out.clear();
  if (inverse_rate <= 1) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(static_cast<std::uint32_t>(k));
    return;
  }
  if (inverse_rate <= 4) {
    std::uniform_int_distribution<std::uint64_t> coin(0, inverse_rate - 1);
    for (std::size_t k = 0; k < n; ++k)
      if (coin(rng) == 0) out.push_back(static_cast<std::uint32_t>(k));
    return;
  }
  std::geometric_distribution<std::uint64_t> gap(1.0 / static_cast<double>(inverse_rate));
  std::uint64_t k = gap(rng);
  while (k < n) {
    out.push_back(static_cast<std::uint32_t>(k));
    k += 1 + gap(rng);
  }
}

}  // namespace hamdist
