#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hamdist/primes.hpp"

namespace hamdist {

using Seq = std::vector<std::uint64_t>;

// c[i] = sum_j a[j] * b[i - j], length |a| + |b| - 1 (empty if either is).
// Serial O(|a||b|) loop; the reference the transform paths are tested against.
Seq convolve_schoolbook(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// Exact convolution. Throws OverflowError unless sum(a) * sum(b) < 2^63.
Seq convolve_exact(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// Convolution reduced mod p. Inputs must already lie in [0, p).
// Throws InvalidModulus if p is not prime, InvalidParameter on unreduced input.
Seq convolve_mod_p(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                   const PrimeWitness& p);

// Same contract without the primality check; any modulus >= 2 works.
Seq convolve_mod(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                 std::uint64_t p);

struct PackingPlan {
  unsigned lane_bits = 0;   // lambda
  unsigned per_word = 1;    // K coefficients per packed word
  unsigned ntt_primes = 1;  // 1 or 2
};

// Cheapest Kronecker packing that keeps every lane carry-free for
// coefficients below p and sequences of length at most max_len.
PackingPlan plan_packing(std::uint64_t p, std::size_t max_len);

// Convolution with an explicit packing plan; exposed so tests can force
// every branch.
Seq convolve_mod_packed(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                        std::uint64_t p, const PackingPlan& plan);

}  // namespace hamdist
