#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hamdist/rng.hpp"
#include "hamdist/strings.hpp"
#include "hamdist/sumset.hpp"

namespace hamdist {

struct ExactOptions {
  SumsetOptions sumset;
  // Retries with fresh randomness when a sumset call runs past its work
  // budget; the last attempt runs without a budget.
  unsigned budget_retries = 3;
  // Budget per call is budget_factor * U * (log2 U + 1) work units; 0 disables it.
  std::uint64_t budget_factor = 64;
};

// Exact distances. Characters with at most sqrt(2 * block length)
// occurrences are counted pair by pair, the rest through sumset_counts.
DistanceVector exact_hamming(const IntString& text, const IntString& pattern, Rng& rng,
                             const ExactOptions& opts = {});

// Deterministic variant built on sumset_counts_det.
DistanceVector exact_hamming_det(const IntString& text, const IntString& pattern);

// |{j : P[j] < T[k + j]}| per shift k.
DistanceVector dominance_counts(const IntString& text, const IntString& pattern, Rng& rng,
                                const ExactOptions& opts = {});

// Sorted, distinct positions inside [universe].
struct SparseBooleanSeq {
  std::vector<std::uint64_t> support;
  std::uint64_t universe = 1;
};

// (position, count) pairs with count > 0, sorted by position.
using SparseCounts = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// Throws InvalidInstance unless the support is strictly increasing and in range.
void validate_sparse(const SparseBooleanSeq& s);

SparseCounts sparse_conv_schoolbook(const SparseBooleanSeq& f, const SparseBooleanSeq& g);

// One sparse convolution per pair. Pairs with n_i <= sqrt(2n) are enumerated,
// larger ones go through sumset_counts; n is the largest universe in the batch.
std::vector<SparseCounts> batch_sparse_boolean_conv(
    std::span<const std::pair<SparseBooleanSeq, SparseBooleanSeq>> pairs, Rng& rng);

// One convolution per character of the pattern.
DistanceVector fft_hamming(const IntString& text, const IntString& pattern);

// Characters frequent in the pattern by convolution, the rest by listing
// the pattern positions of each text character.
DistanceVector abrahamson_hamming(const IntString& text, const IntString& pattern);

}  // namespace hamdist
