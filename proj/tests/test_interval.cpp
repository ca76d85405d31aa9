#include <doctest.h>

#include <cmath>

#include "hamdist/error.hpp"
#include "hamdist/estimators.hpp"
#include "support.hpp"

using namespace hamdist;

namespace {

IntervalColoredSet random_intervals(std::uint64_t n, std::size_t count, std::int64_t colors, Rng& rng) {
  std::vector<std::uint64_t> cuts;
  while (cuts.size() < 2 * count) {
    cuts.push_back(rng() % (n + 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  IntervalColoredSet s;
  s.universe = n;
  for (std::size_t i = 0; i < count; ++i)
    s.intervals.push_back({cuts[2 * i], cuts[2 * i + 1], static_cast<std::int64_t>(rng() % colors)});
  return s;
}

// Position-by-position recount, independent of the interval oracle.
std::vector<std::int64_t> expand_counts(const IntervalColoredSet& a, const IntervalColoredSet& b) {
  const std::uint64_t n = std::max(a.universe, b.universe);
  std::vector<std::int64_t> ca(n, -1), cb(n, -1), out(2 * n - 1, 0);
  for (const auto& iv : a.intervals)
    for (auto p = iv.start; p < iv.end; ++p) ca[p] = iv.color;
  for (const auto& iv : b.intervals)
    for (auto p = iv.start; p < iv.end; ++p) cb[p] = iv.color;
  for (std::uint64_t p = 0; p < n; ++p)
    for (std::uint64_t q = 0; q < n; ++q)
      if (ca[p] >= 0 && ca[p] == cb[q]) ++out[p + q];
  return out;
}

}  // namespace

TEST_CASE("validate_intervals") {
  CHECK_NOTHROW(validate_intervals({{{0, 2, 1}, {2, 4, 0}}, 4}));
  CHECK_THROWS_AS(validate_intervals({{{0, 3, 1}, {2, 4, 0}}, 4}), InvalidInstance);
  CHECK_THROWS_AS(validate_intervals({{{2, 2, 1}}, 4}), InvalidInstance);
  CHECK_THROWS_AS(validate_intervals({{{2, 5, 1}}, 4}), InvalidInstance);
}

TEST_CASE("dyadic pieces tile each interval") {
  Rng rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = random_intervals(1000, 10, 3, rng);
    for (std::uint64_t cap : {1u, 4u, 64u, 1024u}) {
      const auto pieces = dyadic_pieces(s, cap);
      std::uint64_t covered = 0, want = 0;
      for (const auto& iv : s.intervals) want += iv.end - iv.start;
      for (const auto& p : pieces) {
        const auto len = p.end - p.start;
        CHECK(std::has_single_bit(len));
        CHECK(len <= cap);
        CHECK(p.start % len == 0);
        covered += len;
      }
      CHECK(covered == want);
    }
  }
  CHECK_THROWS_AS(dyadic_pieces({{}, 4}, 3), InvalidParameter);
}

TEST_CASE("interval oracle matches a position recount") {
  Rng rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const auto a = random_intervals(200, 8, 3, rng), b = random_intervals(200, 8, 3, rng);
    CHECK(interval_counts_oracle(a, b) == expand_counts(a, b));
  }
}

TEST_CASE("single interval gives triangle counts exactly") {
  const IntervalColoredSet a{{{0, 4, 7}}, 4};
  Rng rng(3);
  const auto est = estimate_interval_counts(a, a, 4, 0.1, rng);
  REQUIRE(est.size() == 7);
  for (std::size_t z = 0; z < 7; ++z)
    CHECK(est[z] == static_cast<double>(std::min<std::size_t>({z + 1, 4, 7 - z})));
}

TEST_CASE("disjoint colors give zero") {
  Rng rng(4);
  const auto a = random_intervals(256, 12, 1, rng);
  auto b = random_intervals(256, 12, 1, rng);
  for (auto& iv : b.intervals) iv.color = 5;
  for (double v : estimate_interval_counts(a, b, 32, 0.5, rng)) CHECK(v == 0.0);
}

TEST_CASE("parameter checks") {
  Rng rng(5);
  const IntervalColoredSet a{{{0, 4, 7}}, 4};
  CHECK_THROWS_AS(estimate_interval_counts(a, a, 0, 0.5, rng), InvalidParameter);
  CHECK_THROWS_AS(estimate_interval_counts(a, a, 4, 0.0, rng), InvalidParameter);
  CHECK_THROWS_AS(estimate_interval_counts(a, a, 4, 1.5, rng), InvalidParameter);
  IntervalOptions none;
  none.repetitions = 0;
  CHECK_THROWS_AS(estimate_interval_counts(a, a, 4, 0.5, rng, none), InvalidParameter);
}

TEST_CASE("additive error stays within 2 eps k") {
  Rng rng(6);
  for (double eps : {0.5, 0.25}) {
    int ok = 0;
    const int runs = 20;
    for (int r = 0; r < runs; ++r) {
      const auto a = random_intervals(1024, 16, 4, rng), b = random_intervals(1024, 16, 4, rng);
      const std::uint64_t k = 64;
      const auto truth = interval_counts_oracle(a, b);
      const auto est = estimate_interval_counts(a, b, k, eps, rng);
      double worst = 0;
      for (std::size_t z = 0; z < truth.size(); ++z)
        worst = std::max(worst, std::abs(est[z] - static_cast<double>(truth[z])));
      ok += worst <= 2 * eps * static_cast<double>(k);
    }
    CHECK(ok >= runs * 19 / 20);
  }
}

TEST_CASE("repetition count is reproducible per seed") {
  const IntervalColoredSet a{{{0, 100, 1}, {200, 260, 2}}, 300};
  const IntervalColoredSet b{{{10, 90, 1}, {250, 300, 2}}, 300};
  Rng r1(7), r2(7);
  IntervalOptions opts;
  opts.repetitions = 5;
  CHECK(estimate_interval_counts(a, b, 8, 0.5, r1, opts) == estimate_interval_counts(a, b, 8, 0.5, r2, opts));
}
