#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hamdist/matrix.hpp"
#include "hamdist/rng.hpp"
#include "hamdist/strings.hpp"

namespace hamdist {

// Sets A, B of integers and the target range C = [n]. Both sides may hold
// up to n elements.
struct ThreeSumVariantInstance {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  std::uint64_t n = 0;
};

// count[c] = |{(a, b) : a + b = c}| for c in [n], by a double loop.
std::vector<std::uint64_t> count_3sum_variant_naive(const ThreeSumVariantInstance& inst);

struct HammingAs3Sum {
  ThreeSumVariantInstance instance;  // A from the pattern, B from the text
  std::size_t m = 0;
  std::size_t shifts = 0;
};

// A = {-2n P[i] - i}, B = {2n T[i] + i}, C = [n]. Throws InvalidParameter
// when n > 4m.
HammingAs3Sum hamming_to_3sum_instance(const IntString& text, const IntString& pattern);

// distance[i] = m - count[i] for each shift i.
DistanceVector decode_3sum_counts(const HammingAs3Sum& red, const std::vector<std::uint64_t>& counts);

using HammingSolver = std::function<DistanceVector(const IntString& text, const IntString& pattern)>;

// Exact counts for every c in [n] from Hamming distance calls on
// O(log^2 n) text/pattern pairs built over occupancy layers. Throws
// RetryExhausted if 32 rounds of random shifts all overflow the layer cap.
std::vector<std::uint64_t> solve_3sum_variant_via_hamming(const ThreeSumVariantInstance& inst,
                                                          const HammingSolver& solver, Rng& rng);

struct EqualityProductInstance {
  IntString text;
  IntString pattern;
  std::size_t n = 0;  // matrix dimension N

  // Shift at which row block f(i) of the text meets column block g(k).
  std::size_t aligned_shift(std::size_t i, std::size_t k) const;
};

// Text $^{N^2} f(0) $ f(1) $ ... $ f(N-1) $^{N^2}, pattern g(0) ... g(N-1).
EqualityProductInstance equality_product_to_hamming(const IntMatrix& a, const IntMatrix& b);

// C[i, k] = N^2 - distance at the aligned shift.
IntMatrix decode_equality_product(const EqualityProductInstance& inst, const DistanceVector& dist);

}  // namespace hamdist
