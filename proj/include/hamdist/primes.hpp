#pragma once

#include <cstdint>

namespace hamdist {

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

struct PrimeWitness {
  std::uint64_t value = 2;
  std::uint64_t lo = 2;
  std::uint64_t hi = 2;
};

// Smallest prime in [lo, hi]. Throws InvalidParameter unless 2 <= lo <= hi,
// NotFound when the range holds no prime.
PrimeWitness find_prime(std::uint64_t lo, std::uint64_t hi);

// Smallest prime >= lo.
std::uint64_t next_prime(std::uint64_t lo);

}  // namespace hamdist
