#pragma once

// Independent oracles and small generators shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hamdist/rng.hpp"
#include "hamdist/strings.hpp"

namespace testing {

inline std::vector<std::uint64_t> recount_hamming(const hamdist::IntString& t,
                                                  const hamdist::IntString& p) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i + p.size() <= t.size(); ++i) {
    std::uint64_t d = p.size();
    for (std::size_t j = 0; j < p.size(); ++j) d -= (t[i + j] == p[j]);
    out.push_back(d);
  }
  return out;
}

inline hamdist::IntString rand_str(std::size_t n, std::uint64_t sigma, hamdist::Rng& rng) {
  return hamdist::random_string(n, sigma, rng);
}

// Text and pattern share sigma so validate_instance accepts them.
inline std::pair<hamdist::IntString, hamdist::IntString> rand_instance(std::size_t n, std::size_t m,
                                                                       std::uint64_t sigma,
                                                                       hamdist::Rng& rng) {
  return {hamdist::random_string(n, sigma, rng), hamdist::random_string(m, sigma, rng)};
}

struct Moments {
  double n = 0, mean = 0, m2 = 0;
  void add(double x) {
    n += 1;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double var() const { return n > 1 ? m2 / (n - 1) : 0.0; }
  double stderr_mean() const { return std::sqrt(var() / n); }
};

}  // namespace testing
