#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "hamdist/matrix.hpp"
#include "hamdist/rng.hpp"

namespace hamdist {

// Marks a matrix or sequence entry that takes part in no sum.
inline constexpr std::int64_t kAbsent = std::numeric_limits<std::int64_t>::min();

// Every estimate is an integer count scaled by an integer inverse sampling
// rate (1, s*t or 2^l * t), so values are exact int64.
struct TriangleEntry {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::int64_t z = 0;
  std::int64_t value = 0;
  friend bool operator==(const TriangleEntry&, const TriangleEntry&) = default;
};

struct TriangleEstimate {
  std::vector<TriangleEntry> entries;  // sorted by (i, j, z); zeros omitted
  std::uint64_t t = 1;
  std::uint64_t s = 1;
  std::int64_t delta = 1;

  std::int64_t at(std::uint32_t i, std::uint32_t j, std::int64_t z) const;
};

struct Conv3SumEntry {
  std::uint32_t h = 0;
  std::int64_t z = 0;
  std::int64_t value = 0;
  friend bool operator==(const Conv3SumEntry&, const Conv3SumEntry&) = default;
};

struct Conv3SumEstimate {
  std::vector<Conv3SumEntry> entries;  // sorted by (h, z); zeros omitted
  std::uint64_t t = 1;
  std::int64_t delta = 1;

  std::int64_t at(std::uint32_t h, std::int64_t z) const;
};

// Sparse estimate indexed by the sum z.
struct SumEstimate {
  std::vector<std::pair<std::int64_t, std::int64_t>> entries;  // sorted by z; zeros omitted
  std::uint64_t t = 1;
  std::int64_t delta = 1;

  std::int64_t at(std::int64_t z) const;
};

enum class TriangleBackend {
  // Count each needed sample directly from the witness lists.
  enumerate,
  // Fredman's trick: one equality product per (level, k0, residue) group.
  equality_product,
};

struct EstimatorOptions {
  MatmulBackend matmul = MatmulBackend::blocked;
  TriangleBackend triangle = TriangleBackend::enumerate;
  // Colors larger than the cutoff are counted exactly by convolution; turning
  // this off sends every color through the sampling path.
  bool exact_large_colors = true;
  // Recursion cap for the bad-element branches of estimate_3sum.
  unsigned max_3sum_depth = 6;
};

// f[i, j, z] estimating |{k : A[i,k] + B[k,j] = z}|. Requires delta >= 1 to
// divide every present entry of A, 1 <= t <= cols(A), 1 <= s <= cols(A) / t.
TriangleEstimate estimate_triangle_counts(const IntMatrix& a, const IntMatrix& b,
                                          std::int64_t delta, std::uint64_t t, std::uint64_t s,
                                          Rng& rng, const EstimatorOptions& opts = {});

// f[h, z] estimating |{k < h : a[k] + b[h - k] = z}| for h in [n], n = max(|a|, |b|).
Conv3SumEstimate estimate_conv3sum(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b, std::int64_t delta,
                                   std::uint64_t t, Rng& rng, const EstimatorOptions& opts = {});

// f[z] estimating |{(a, b) : a + b = z}|. Every element of a must be divisible by delta.
SumEstimate estimate_3sum(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                          std::int64_t delta, std::uint64_t t, Rng& rng,
                          const EstimatorOptions& opts = {});

struct ColoredValue {
  std::int64_t value = 0;
  std::int64_t color = 0;
};

// Size cutoff between sampled and exact colors.
double colored_cutoff(std::uint64_t universe, std::uint64_t t, std::int64_t delta, double omega);

// f[z] estimating |{(a, b) : a + b = z, color(a) = color(b)}|.
SumEstimate estimate_colored_3sum(const std::vector<ColoredValue>& a,
                                  const std::vector<ColoredValue>& b, std::uint64_t universe,
                                  std::int64_t delta, std::uint64_t t, Rng& rng,
                                  const EstimatorOptions& opts = {});

// Half-open monochromatic interval [start, end).
struct ColoredInterval {
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  std::int64_t color = 0;
};

struct IntervalColoredSet {
  std::vector<ColoredInterval> intervals;
  std::uint64_t universe = 0;  // n: every interval lies in [0, n)
};

// Throws InvalidInstance on empty, overlapping or out-of-range intervals.
void validate_intervals(const IntervalColoredSet& set);

// Dyadic pieces of length at most cap (a power of two).
std::vector<ColoredInterval> dyadic_pieces(const IntervalColoredSet& set, std::uint64_t cap);

// Exact COUNT[z] over z in [2n - 1] by expanding every interval.
std::vector<std::int64_t> interval_counts_oracle(const IntervalColoredSet& a,
                                                 const IntervalColoredSet& b);

struct IntervalOptions {
  EstimatorOptions estimator;
  std::optional<unsigned> repetitions;  // default 8 * ceil(log2 n)
};

// Median-of-repetitions estimate of COUNT[z] for z in [2n - 1].
std::vector<double> estimate_interval_counts(const IntervalColoredSet& a,
                                             const IntervalColoredSet& b, std::uint64_t k,
                                             double eps, Rng& rng,
                                             const IntervalOptions& opts = {});

}  // namespace hamdist
