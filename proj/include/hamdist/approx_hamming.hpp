#pragma once

#include <cstdint>
#include <optional>

#include "hamdist/estimators.hpp"
#include "hamdist/exact.hpp"
#include "hamdist/rng.hpp"
#include "hamdist/strings.hpp"

namespace hamdist {

struct ApproxConfig {
  double eps = 0.5;
  EstimatorOptions estimator;
  std::optional<unsigned> repetitions;  // default 8 * ceil(log2 n)
  // Shifts at distance <= exact_cutoff() take the exact value.
  bool exact_fallback = true;
  ExactOptions exact;

  double omega() const { return hamdist::omega(estimator.matmul); }
  // gamma = 8 / (11 - omega)
  double gamma() const;
  // ceil(eps^-gamma * sqrt(m))
  std::uint64_t exact_cutoff(std::size_t m) const;
};

// Maximal runs of equal characters as monochromatic intervals over [size].
IntervalColoredSet runs_of(const IntString& s);

// Additive-error estimate for run-length inputs. text covers [n], pattern
// covers [m] with m <= n; throws InvalidInstance if either side has more
// than 4k runs.
DistanceVector approx_hamming_k(const IntervalColoredSet& text, const IntervalColoredSet& pattern,
                                std::uint64_t k, double eps, Rng& rng,
                                const IntervalOptions& opts = {});

DistanceVector approx_hamming_k(const IntString& text, const IntString& pattern, std::uint64_t k,
                                double eps, Rng& rng, const IntervalOptions& opts = {});

// (1 + O(eps))-approximate distances at every shift. Output lies in [0, m].
DistanceVector approx_hamming(const IntString& text, const IntString& pattern, Rng& rng,
                              const ApproxConfig& config = {});

}  // namespace hamdist
