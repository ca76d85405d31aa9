#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hamdist/convolution.hpp"
#include "hamdist/error.hpp"
#include "hamdist/rng.hpp"

namespace hamdist {

// COUNT[z] for z in [U].
using CountArray = std::vector<std::uint64_t>;

// A multiset given as a list of elements (repeats allowed) inside [U].
struct IntegerMultiSet {
  std::vector<std::uint64_t> elements;
  std::uint64_t universe = 1;
};

// Thrown when a call exceeds SumsetOptions::work_budget. Callers that set a
// budget catch it and retry with fresh randomness.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct SumsetOptions {
  // Run the hashing levels even where a single convolution would do.
  bool force_hashing = false;
  // Replaces the first-level ratio r1 (must be >= 4 and a power of two).
  std::optional<std::uint64_t> first_level_r;
  // Abort with BudgetExceeded after this many work units (0 = no limit).
  std::uint64_t work_budget = 0;
  // Recursion cap for the partial routine before it falls back to a
  // convolution over the whole universe.
  unsigned max_depth = 24;
};

// Per-call bookkeeping, mostly for tests and benches.
struct SumsetStats {
  std::uint64_t work = 0;
  std::uint64_t hash_trials = 0;
  std::uint64_t partial_levels = 0;
  std::uint64_t fallbacks = 0;
};

// Double loop. Result has length U; throws DomainError if some x + y >= U.
CountArray sumset_counts_naive(std::span<const std::uint64_t> xs,
                               std::span<const std::uint64_t> ys, std::uint64_t universe);

// Plain exact convolution of the two indicator vectors, truncated to [U].
CountArray sumset_counts_conv(std::span<const std::uint64_t> xs,
                              std::span<const std::uint64_t> ys, std::uint64_t universe);

// Las Vegas: always exact, random running time. Elements must lie in
// [U/2] and U must be a power of two.
CountArray sumset_counts(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                         std::uint64_t universe, Rng& rng, const SumsetOptions& opts = {},
                         SumsetStats* stats = nullptr);

// Counts for the sorted, distinct `live` values given correct `known[z]`
// for every z not in `live` (known has length U). Returned in live order.
std::vector<std::uint64_t> sumset_counts_partial(std::span<const std::uint64_t> xs,
                                                 std::span<const std::uint64_t> ys,
                                                 std::uint64_t universe,
                                                 std::span<const std::uint64_t> live,
                                                 std::span<const std::uint64_t> known, Rng& rng,
                                                 const SumsetOptions& opts = {},
                                                 SumsetStats* stats = nullptr);

// Deterministic exact counts. Same preconditions as sumset_counts.
CountArray sumset_counts_det(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                             std::uint64_t universe);

struct ModuliFamily {
  std::vector<std::uint64_t> moduli;
  std::vector<std::uint64_t> elements;  // T, sorted
  std::vector<std::uint32_t> witness;   // witness[i]: modulus index isolating elements[i]
};

// Consecutive primes starting near |T| log U / log |T|, added until every
// element of T has a residue no other element shares under some modulus.
ModuliFamily isolating_moduli(std::span<const std::uint64_t> set, std::uint64_t universe);

// True iff every witness really isolates its element (direct congruence scan).
bool verify_isolation(const ModuliFamily& family);

// A * B given C and a superset T of supp(A * B - C), promised A * B - C >= 0.
// Returns a sequence of length |A| + |B| - 1. Throws PromiseViolated when a
// recovered difference is negative.
Seq sparse_conv_minus_c(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                        std::span<const std::uint64_t> c, std::span<const std::uint64_t> support);

}  // namespace hamdist
