#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "hamdist/error.hpp"
#include "hamdist/estimators.hpp"

namespace hamdist {
namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Adds sum_i w(i) * v at every anchor + i, where w is the triangle-counting
// weight of a length-L box against a length-l box. Done as two running-sum
// box filters over the anchor array.
void spread_trapezoid(std::vector<i64>& anchors, u64 big, u64 small, std::vector<i64>& out) {
  std::vector<i64> once(anchors.size(), 0);
  i64 run = 0;
  for (std::size_t x = 0; x < anchors.size(); ++x) {
    run += anchors[x];
    if (x >= big) run -= anchors[x - big];
    once[x] = run;
  }
  run = 0;
  for (std::size_t x = 0; x < once.size(); ++x) {
    run += once[x];
    if (x >= small) run -= once[x - small];
    out[x] += run;
  }
}

}  // namespace

void validate_intervals(const IntervalColoredSet& set) {
  std::vector<ColoredInterval> v = set.intervals;
  std::sort(v.begin(), v.end(),
            [](const ColoredInterval& x, const ColoredInterval& y) { return x.start < y.start; });
  for (std::size_t x = 0; x < v.size(); ++x) {
    if (v[x].start >= v[x].end)
      throw InvalidInstance("empty interval at " + std::to_string(v[x].start));
    if (v[x].end > set.universe)
      throw InvalidInstance("interval [" + std::to_string(v[x].start) + ", " +
                            std::to_string(v[x].end) + ") leaves [0, " +
                            std::to_string(set.universe) + ")");
    if (x > 0 && v[x - 1].end > v[x].start)
      throw InvalidInstance("intervals overlap at " + std::to_string(v[x].start));
  }
}

std::vector<ColoredInterval> dyadic_pieces(const IntervalColoredSet& set, std::uint64_t cap) {
  if (cap == 0 || !std::has_single_bit(cap)) throw InvalidParameter("cap must be a power of two");
  std::vector<ColoredInterval> out;
  for (const ColoredInterval& iv : set.intervals) {
    u64 s = iv.start;
    while (s < iv.end) {
      u64 len = s == 0 ? cap : std::min<u64>(cap, u64{1} << std::countr_zero(s));
      while (s + len > iv.end) len /= 2;
      out.push_back({s, s + len, iv.color});
      s += len;
    }
  }
  return out;
}

std::vector<std::int64_t> interval_counts_oracle(const IntervalColoredSet& a,
                                                 const IntervalColoredSet& b) {
  validate_intervals(a);
  validate_intervals(b);
  const u64 n = std::max(a.universe, b.universe);
  std::vector<i64> out(n == 0 ? 0 : 2 * n - 1, 0);
  for (const ColoredInterval& x : a.intervals)
    for (const ColoredInterval& y : b.intervals) {
      if (x.color != y.color) continue;
      for (u64 p = x.start; p < x.end; ++p)
        for (u64 q = y.start; q < y.end; ++q) ++out[p + q];
    }
  return out;
}

std::vector<double> estimate_interval_counts(const IntervalColoredSet& a,
                                             const IntervalColoredSet& b, std::uint64_t k,
                                             double eps, Rng& rng, const IntervalOptions& opts) {
  validate_intervals(a);
  validate_intervals(b);
  if (k < 1) throw InvalidParameter("k must be >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParameter("eps must lie in (0, 1]");
  const u64 n = std::max<u64>({a.universe, b.universe, 1});
  const u64 cap = std::bit_floor(std::max<u64>(1, n / k));
  const unsigned reps = opts.repetitions.value_or(
      8 * static_cast<unsigned>(std::max(1.0, std::ceil(std::log2(static_cast<double>(n))))));
  if (reps == 0) throw InvalidParameter("repetitions must be >= 1");

  // Group the dyadic pieces of each side by length.
  std::map<u64, std::vector<ColoredInterval>> ga, gb;
  for (const ColoredInterval& iv : dyadic_pieces(a, cap)) ga[iv.end - iv.start].push_back(iv);
  for (const ColoredInterval& iv : dyadic_pieces(b, cap)) gb[iv.end - iv.start].push_back(iv);

  const std::size_t len = 2 * n - 1;
  const u64 base = rng();
  std::vector<std::vector<i64>> runs(reps, std::vector<i64>(len, 0));
#pragma omp parallel for schedule(dynamic) if (reps > 1)
  for (std::int64_t rr = 0; rr < static_cast<std::int64_t>(reps); ++rr) {
    Rng rep_rng = make_stream(base, static_cast<u64>(rr));
    std::vector<i64>& out = runs[static_cast<std::size_t>(rr)];
    for (const auto& [la, pa] : ga)
      for (const auto& [lb, pb] : gb) {
        // The longer side carries the divisibility by L / l.
        const bool swap = lb > la;
        const u64 big = swap ? lb : la, small = swap ? la : lb;
        const auto& pbig = swap ? pb : pa;
        const auto& psmall = swap ? pa : pb;
        std::vector<ColoredValue> xs, ys;
        for (const auto& iv : pbig) xs.push_back({static_cast<i64>(iv.start / small), iv.color});
        for (const auto& iv : psmall) ys.push_back({static_cast<i64>(iv.start / small), iv.color});
        const u64 universe = (n + small - 1) / small;
        const u64 t_raw = static_cast<u64>(eps * eps * static_cast<double>(k) /
                                           (static_cast<double>(big) * static_cast<double>(small)));
        const u64 t = std::clamp<u64>(t_raw, 1, std::max<u64>(1, xs.size() + ys.size()));
        const SumEstimate est = estimate_colored_3sum(xs, ys, universe, static_cast<i64>(big / small),
                                                      t, rep_rng, opts.estimator);
        if (est.entries.empty()) continue;
        std::vector<i64> anchors(len, 0);
        for (const auto& [z, v] : est.entries) anchors[static_cast<std::size_t>(z) * small] += v;
        spread_trapezoid(anchors, big, small, out);
      }
  }

  std::vector<double> result(len, 0.0);
  std::vector<i64> column(reps);
  for (std::size_t z = 0; z < len; ++z) {
    for (unsigned r = 0; r < reps; ++r) column[r] = runs[r][z];
    const std::size_t mid = reps / 2;
    std::nth_element(column.begin(), column.begin() + mid, column.end());
    double med = static_cast<double>(column[mid]);
    if (reps % 2 == 0) {
      const i64 lower = *std::max_element(column.begin(), column.begin() + mid);
      med = (med + static_cast<double>(lower)) / 2.0;
    }
    result[z] = med;
  }
  return result;
}

}  // namespace hamdist
