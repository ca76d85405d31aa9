#include "hamdist/approx_hamming.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "hamdist/error.hpp"

namespace hamdist {
namespace {

using u64 = std::uint64_t;

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParameter("eps must lie in (0, 1]");
}

u64 clamp_distance(double matches, std::size_t m) {
  const double d = static_cast<double>(m) - matches;
  return static_cast<u64>(std::clamp(std::llround(d), 0LL, static_cast<long long>(m)));
}

unsigned default_reps(std::size_t n) {
  return 8 * static_cast<unsigned>(std::max(1.0, std::ceil(std::log2(static_cast<double>(n)))));
}

double median(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double med = v[mid];
  if (v.size() % 2 == 0) med = (med + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid))) / 2.0;
  return med;
}

}  // namespace

double ApproxConfig::gamma() const { return 8.0 / (11.0 - omega()); }

std::uint64_t ApproxConfig::exact_cutoff(std::size_t m) const {
  return static_cast<u64>(std::ceil(std::pow(eps, -gamma()) * std::sqrt(static_cast<double>(m))));
}

IntervalColoredSet runs_of(const IntString& s) {
  IntervalColoredSet out;
  out.universe = s.size();
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    out.intervals.push_back({i, j, static_cast<std::int64_t>(s[i])});
    i = j;
  }
  return out;
}

DistanceVector approx_hamming_k(const IntervalColoredSet& text, const IntervalColoredSet& pattern,
                                std::uint64_t k, double eps, Rng& rng,
                                const IntervalOptions& opts) {
  check_eps(eps);
  if (k < 1) throw InvalidParameter("k must be >= 1");
  validate_intervals(text);
  validate_intervals(pattern);
  const u64 n = text.universe, m = pattern.universe;
  if (m == 0 || m > n) throw InvalidInstance("need 1 <= m <= n");
  for (const auto* side : {&text, &pattern})
    if (side->intervals.size() > 4 * k)
      throw InvalidInstance(std::to_string(side->intervals.size()) + " runs exceed 4k = " +
                            std::to_string(4 * k));

  // Reflect the pattern so that a text position a and pattern position b
  // meet at sum a + (m - 1 - b) = shift + m - 1.
  IntervalColoredSet reflected;
  reflected.universe = n;
  for (const ColoredInterval& iv : pattern.intervals)
    reflected.intervals.push_back({m - iv.end, m - iv.start, iv.color});
  IntervalColoredSet t = text;
  t.universe = n;
  const std::vector<double> counts = estimate_interval_counts(t, reflected, k, eps, rng, opts);
  std::vector<u64> out(n - m + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = clamp_distance(counts[i + m - 1], m);
  return {std::move(out), DistanceKind::hamming};
}

DistanceVector approx_hamming_k(const IntString& text, const IntString& pattern, std::uint64_t k,
                                double eps, Rng& rng, const IntervalOptions& opts) {
  validate_instance(text, pattern);
  return approx_hamming_k(runs_of(text), runs_of(pattern), k, eps, rng, opts);
}

DistanceVector approx_hamming(const IntString& text, const IntString& pattern, Rng& rng,
                              const ApproxConfig& config) {
  validate_instance(text, pattern);
  check_eps(config.eps);
  const std::size_t n = text.size(), m = pattern.size(), shifts = n - m + 1;
  const u64 cutoff = config.exact_cutoff(m);

  std::vector<u64> out(shifts, 0);
  std::vector<char> settled(shifts, 0);
  if (config.exact_fallback) {
    // Only "distance <= cutoff" is taken from the exact run.
    const DistanceVector exact = exact_hamming(text, pattern, rng, config.exact);
    for (std::size_t i = 0; i < shifts; ++i)
      if (exact[i] <= cutoff) {
        out[i] = exact[i];
        settled[i] = 1;
      }
  }
  if (std::all_of(settled.begin(), settled.end(), [](char c) { return c != 0; }))
    return {std::move(out), DistanceKind::hamming};

  // Classes k = 2^j from the cutoff up to m; class k wants additive error
  // about eps * k, i.e. variance t * (n + m) <= (eps * k / 4)^2.
  std::vector<u64> classes;
  for (u64 k = std::bit_ceil(std::max<u64>(1, cutoff));; k *= 2) {
    classes.push_back(k);
    if (k >= m) break;
  }
  auto t_for = [&](u64 k) {
    const double budget = config.eps * static_cast<double>(k) / 4.0;
    const double t = budget * budget / static_cast<double>(n + m);
    return std::clamp<u64>(static_cast<u64>(t), 1, n + m);
  };

  std::vector<ColoredValue> a(n), b(m);
  for (std::size_t i = 0; i < n; ++i) a[i] = {static_cast<std::int64_t>(i), text[i]};
  for (std::size_t j = 0; j < m; ++j) b[j] = {static_cast<std::int64_t>(m - 1 - j), pattern[j]};

  const unsigned reps = config.repetitions.value_or(default_reps(n));
  if (reps == 0) throw InvalidParameter("repetitions must be >= 1");
  std::map<u64, std::vector<double>> by_t;  // t -> median matches per shift
  for (u64 k : classes) by_t.emplace(t_for(k), std::vector<double>());
  std::uint64_t stream = 0;
  const u64 base = rng();
  for (auto& [t, med] : by_t) {
    std::vector<std::vector<double>> runs(reps, std::vector<double>(shifts, 0.0));
    const u64 tag = stream++;
#pragma omp parallel for schedule(dynamic) if (reps > 1)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(reps); ++r) {
      Rng sub = make_stream(derive_seed(base, tag), static_cast<u64>(r));
      const SumEstimate est = estimate_colored_3sum(a, b, n, 1, t, sub, config.estimator);
      auto& run = runs[static_cast<std::size_t>(r)];
      for (const auto& [z, v] : est.entries) {
        const std::int64_t i = z - static_cast<std::int64_t>(m - 1);
        if (i >= 0 && static_cast<std::size_t>(i) < shifts) run[static_cast<std::size_t>(i)] = static_cast<double>(v);
      }
    }
    med.resize(shifts);
    std::vector<double> column(reps);
    for (std::size_t i = 0; i < shifts; ++i) {
      for (unsigned r = 0; r < reps; ++r) column[r] = runs[r][i];
      med[i] = median(column);
    }
  }

  for (std::size_t i = 0; i < shifts; ++i) {
    if (settled[i]) continue;
    // First class whose estimate falls inside it; the last class otherwise.
    for (u64 k : classes) {
      out[i] = clamp_distance(by_t.at(t_for(k))[i], m);
      if (out[i] <= k) break;
    }
  }
  return {std::move(out), DistanceKind::hamming};
}

}  // namespace hamdist
